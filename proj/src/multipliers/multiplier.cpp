#include <algorithm>
#include <set>

#include "wlh/multipliers.hpp"
#include "wlh/numeric.hpp"

namespace wlh::mult {

namespace {

std::string pair_str(const Section& s, const Section& t) { return s.str() + " vs " + t.str(); }

std::vector<i64> reduce_set(const std::vector<i64>& xs, int q) {
  std::set<i64> out;
  for (i64 x : xs) out.insert(num::mod(x, q));
  return {out.begin(), out.end()};
}

}  // namespace

i64 InnerMultiplier::unit(const Section& s) const {
  auto it = units.find(s);
  if (it == units.end()) fail(ErrorKind::SectionNotCovered, "no unit stored for section " + s.str());
  return it->second;
}

InnerMultiplier identity_multiplier(const std::vector<Section>& sections) { return from_global_unit(sections, 1); }

InnerMultiplier from_global_unit(const std::vector<Section>& sections, i64 lambda) {
  InnerMultiplier m;
  for (const auto& s : sections) m.units[s] = num::mod(lambda, s.order());
  return m;
}

InnerMultiplier compose(const InnerMultiplier& a, const InnerMultiplier& b) {
  if (a.units.size() != b.units.size()) fail(ErrorKind::SectionNotCovered, "multipliers cover different sections");
  InnerMultiplier m;
  for (const auto& [s, x] : a.units) m.units[s] = num::mulmod(x, b.unit(s), s.order());
  return m;
}

InnerMultiplier inverse(const InnerMultiplier& a) {
  InnerMultiplier m;
  for (const auto& [s, x] : a.units) m.units[s] = s.order() == 1 ? 0 : num::invmod(x, s.order());
  return m;
}

InnerMultiplier restrict_to(const InnerMultiplier& m, const std::vector<Section>& sections) {
  InnerMultiplier out;
  for (const auto& s : sections) out.units[s] = m.unit(s);
  return out;
}

CoherenceReport check_inner(const SRing& a, const InnerMultiplier& m) {
  const auto s0 = sring::s0_sections(a);
  CoherenceReport rep;
  rep.sections = s0.size();
  for (const auto& s : s0) {
    const i64 x = m.unit(s);
    if (x < 0 || x >= std::max(s.order(), 1) || num::gcd(x, s.order()) != 1)
      fail(ErrorKind::NotAUnit, std::to_string(x) + " is not a unit residue of section " + s.str());
  }
  for (const auto& s : s0)
    for (const auto& t : s0) {
      if (s == t) continue;
      if (sring::is_subsection(t, s)) {
        ++rep.subsection_clauses;
        if (num::mod(m.unit(s), t.order()) != m.unit(t))
          fail(ErrorKind::CoherenceViolation, "restriction clause fails on " + pair_str(s, t));
      }
      if (sring::is_multiple(t, s)) {
        ++rep.equivalence_clauses;
        if (m.unit(s) != m.unit(t)) fail(ErrorKind::CoherenceViolation, "equivalence clause fails on " + pair_str(s, t));
      }
    }
  return rep;
}

std::vector<i64> section_automorphism_units(const SRing& a, const Section& s) {
  const SRing r = sring::restrict_sring(a, s);
  const int q = r.n;
  if (q == 1) return {0};
  std::vector<i64> out;
  for (i64 u : num::units(q)) {
    bool fixes = true;
    for (int x = 1; x < q && fixes; ++x) fixes = r.class_of[num::mulmod(u, x, q)] == r.class_of[x];
    if (fixes) out.push_back(u);
  }
  return out;
}

CoherenceReport check_outer(const SRing& a, const OuterMultiplier& c) {
  const auto s0 = sring::s0_sections(a);
  CoherenceReport rep;
  rep.sections = s0.size();
  auto get = [&](const Section& s) -> const std::vector<i64>& {
    auto it = c.cosets.find(s);
    if (it == c.cosets.end()) fail(ErrorKind::SectionNotCovered, "no coset stored for section " + s.str());
    return it->second;
  };
  for (const auto& s : s0) {
    const auto& coset = get(s);
    if (coset.empty()) fail(ErrorKind::CoherenceViolation, "empty coset on " + s.str());
    const auto h = section_automorphism_units(a, s);
    // sigma H for the least member sigma must reproduce the stored set.
    std::vector<i64> expect;
    for (i64 x : h) expect.push_back(num::mulmod(coset.front(), x, std::max(s.order(), 1)));
    std::sort(expect.begin(), expect.end());
    ++rep.coset_checks;
    if (num::gcd(coset.front(), s.order()) != 1 || reduce_set(coset, s.order()) != expect)
      fail(ErrorKind::CoherenceViolation, "entry on " + s.str() + " is not a coset of the section automorphism units");
  }
  for (const auto& s : s0)
    for (const auto& t : s0) {
      if (s == t) continue;
      if (sring::is_subsection(t, s)) {
        ++rep.subsection_clauses;
        if (reduce_set(get(s), t.order()) != reduce_set(get(t), t.order()))
          fail(ErrorKind::CoherenceViolation, "restriction clause fails on " + pair_str(s, t));
      }
      if (sring::is_multiple(t, s)) {
        ++rep.equivalence_clauses;
        if (reduce_set(get(s), s.order()) != reduce_set(get(t), t.order()))
          fail(ErrorKind::CoherenceViolation, "equivalence clause fails on " + pair_str(s, t));
      }
    }
  return rep;
}

// ---- prime-basis layer ----------------------------------------------------------

namespace {

/// Unit mod the product of the primes in mask, by CRT over each prime's vertex unit.
i64 unit_on_primes(const BaseShape& shape, const std::vector<i64>& unit, Mask mask) {
  i64 r = 0, m = 1;
  for (int i = 0; i < 2 * shape.a(); ++i)
    if (mask >> i & 1) {
      const i64 p = shape.prime(i);
      r = num::crt(r, m, num::mod(unit[i / 2], p), p);
      m *= p;
    }
  return m == 1 ? 0 : r;
}

}  // namespace

i64 section_unit(const BaseShape& shape, const VertexUnits& m, const PSection& s) {
  return unit_on_primes(shape, m.unit, s.U & ~s.L);
}

VertexUnits inner_from_vertex_data(const BaseShape& shape, const std::vector<i64>& units) {
  if (static_cast<int>(units.size()) != shape.a())
    fail(ErrorKind::SectionNotCovered, "need one unit per vertex section");
  VertexUnits m;
  for (int v = 0; v < shape.a(); ++v) {
    const i64 x = num::mod(units[v], shape.n_v(v));
    if (num::gcd(x, shape.n_v(v)) != 1)
      fail(ErrorKind::NotAUnit, std::to_string(units[v]) + " is not a unit mod " + std::to_string(shape.n_v(v)));
    m.unit.push_back(x);
  }
  // Every S0 section gets the same unit through each s_{u,w} above it.
  for (const auto& s : base_s0_sections(shape)) {
    const i64 q = mask_order(shape, s.U & ~s.L);
    const auto pairs = covering_pairs(shape, s);
    if (pairs.empty()) fail(ErrorKind::SectionNotCovered, "section lies below no s_{u,w}");
    const i64 want = section_unit(shape, m, s);
    for (auto [i, j] : pairs) {
      const PSection top = shape.pair_section(i, j);
      const i64 via = unit_on_primes(shape, m.unit, top.U & ~top.L);
      if (num::mod(via, q) != num::mod(want, q))
        fail(ErrorKind::CoherenceViolation, "vertex data disagree on a shared subsection");
    }
  }
  return m;
}

i64 global_unit(const BaseShape& shape, const VertexUnits& m) {
  Mask all = 0;
  for (int v = 0; v < shape.a(); ++v) all |= BaseShape::vertex_mask(v);
  mask_order(shape, all);  // overflow guard
  return unit_on_primes(shape, m.unit, all);
}

InnerMultiplier to_inner(const BaseShape& shape, const VertexUnits& m, const std::vector<Section>& sections) {
  InnerMultiplier out;
  for (const auto& s : sections) out.units[s] = section_unit(shape, m, to_psection(shape, s));
  return out;
}

VertexUnits compose(const BaseShape& shape, const VertexUnits& x, const VertexUnits& y) {
  VertexUnits out;
  for (int v = 0; v < shape.a(); ++v) out.unit.push_back(num::mulmod(x.unit[v], y.unit[v], shape.n_v(v)));
  return out;
}

i64 klein_unit(const BaseShape& shape, int v, int k) {
  if (k < 0 || k > 3) fail(ErrorKind::NotInKleinSubgroup, "Klein element must be 0..3");
  const auto [p, q] = shape.factors[v];
  return num::crt(k & 1 ? p - 1 : 1, p, k & 2 ? q - 1 : 1, q);
}

int klein_element(const BaseShape& shape, int v, i64 unit) {
  const auto [p, q] = shape.factors[v];
  const i64 x = num::mod(unit, p * q);
  const i64 xp = x % p, xq = x % q;
  if ((xp != 1 && xp != p - 1) || (xq != 1 && xq != q - 1))
    fail(ErrorKind::NotInKleinSubgroup, std::to_string(unit) + " does not square to 1 mod " + std::to_string(p * q));
  return (xp == p - 1 ? 1 : 0) | (xq == q - 1 ? 2 : 0);
}

std::vector<i64> klein_subgroup(const BaseShape& shape, int v) {
  std::vector<i64> out;
  for (int k = 0; k < 4; ++k) out.push_back(klein_unit(shape, v, k));
  std::sort(out.begin(), out.end());
  return out;
}

VertexUnits mu(const BaseShape& shape, const std::vector<i64>& f) {
  if (static_cast<int>(f.size()) != shape.a()) fail(ErrorKind::MalformedInput, "Klein tuple needs one entry per vertex");
  VertexUnits m;
  for (int v = 0; v < shape.a(); ++v) {
    klein_element(shape, v, f[v]);
    m.unit.push_back(num::mod(f[v], shape.n_v(v)));
  }
  return m;
}

VertexUnits mu_elements(const BaseShape& shape, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != shape.a()) fail(ErrorKind::MalformedInput, "Klein tuple needs one entry per vertex");
  VertexUnits m;
  for (int v = 0; v < shape.a(); ++v) m.unit.push_back(klein_unit(shape, v, f[v]));
  return m;
}

}  // namespace wlh::mult
