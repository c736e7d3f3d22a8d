#include <algorithm>

#include "wlh/multipliers.hpp"
#include "wlh/numeric.hpp"

namespace wlh::mult {

namespace {

/// The ring on the CRT component Z_d of Z_n (d coprime to n / d), indexed by x mod d.
SRing component_ring(const SRing& a, int d) {
  const int e = a.n / d;
  const i64 e_inv = d == 1 ? 0 : num::invmod(e, d);
  std::vector<int> labels(d);
  for (int r = 0; r < d; ++r) labels[r] = a.class_of[e * num::mulmod(r, e_inv, d)];
  return sring::sring_from_labels(d, labels);
}

bool try_tensor(const SRing& a, int& d_out, SRing& first, SRing& second) {
  for (auto d64 : num::divisors(a.n)) {
    const int d = static_cast<int>(d64), e = a.n / d;
    if (d == 1 || e == 1 || num::gcd(d, e) != 1) continue;
    if (!sring::is_a_subgroup(a, d) || !sring::is_a_subgroup(a, e)) continue;
    SRing x = component_ring(a, d), y = component_ring(a, e);
    if (sring::tensor_sring(x, y) == a) {
      d_out = d, first = std::move(x), second = std::move(y);
      return true;
    }
  }
  return false;
}

bool try_wreath(const SRing& a, int& h_out, SRing& lower, SRing& upper) {
  for (int h : sring::a_subgroups(a)) {
    if (h == 1 || h == a.n) continue;
    const int step = a.n / h;
    bool ok = true;
    // Classes outside H must be unions of H-cosets.
    for (const auto& c : a.classes) {
      if (c.front() % step == 0) continue;
      if (sring::radical_order(a.n, c) % h != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    SRing lo = sring::restrict_sring(a, Section{h, 1}), up = sring::restrict_sring(a, Section{a.n, h});
    if (sring::wreath_sring(lo, up) == a) {
      h_out = h, lower = std::move(lo), upper = std::move(up);
      return true;
    }
  }
  return false;
}

Decomposition decompose_rec(const SRing& a) {
  Decomposition d;
  d.n = a.n;
  if (a.rank() == a.n) return d;
  SRing x, y;
  int split = 0;
  if (try_tensor(a, split, x, y)) {
    d.kind = Decomposition::Kind::Tensor;
  } else if (try_wreath(a, split, x, y)) {
    d.kind = Decomposition::Kind::Wreath;
  } else {
    fail(ErrorKind::NotDecomposable, "ring over Z_" + std::to_string(a.n) + " is neither a group ring, tensor nor wreath");
  }
  d.split = split;
  d.parts.push_back(decompose_rec(x));
  d.parts.push_back(decompose_rec(y));
  return d;
}

/// Unit of the A-section s reduced mod |s|, read from any stored section above it.
i64 lookup_unit(const InnerMultiplier& m, const Section& s) {
  auto it = m.units.find(s);
  if (it != m.units.end()) return it->second;
  for (const auto& [t, x] : m.units)
    if (sring::is_subsection(s, t)) return num::mod(x, s.order());
  fail(ErrorKind::SectionNotCovered, "no stored section covers " + s.str());
}

/// Realization on a sub-ring living on a section with lower subgroup of order base in the top group.
std::vector<int> realize_rec(const SRing& a, int base, const InnerMultiplier& m) {
  const int n = a.n;
  std::vector<int> f(n);
  if (a.rank() == n) {
    const i64 lambda = n == 1 ? 0 : lookup_unit(m, Section{n * base, base});
    for (int x = 0; x < n; ++x) f[x] = static_cast<int>(num::mulmod(lambda, x, n));
    return f;
  }
  SRing x, y;
  int split = 0;
  if (try_tensor(a, split, x, y)) {
    const int d = split, e = n / d;
    const auto f1 = realize_rec(x, base, m), f2 = realize_rec(y, base, m);
    for (int v = 0; v < n; ++v) f[v] = static_cast<int>(num::crt(f1[v % d], d, f2[v % e], e));
    return f;
  }
  if (try_wreath(a, split, x, y)) {
    const int h = split, q = n / h;
    const auto fl = realize_rec(x, base, m), fu = realize_rec(y, base * h, m);
    // x = z + q k with z the block representative in [0, q).
    for (int v = 0; v < n; ++v) f[v] = fu[v % q] + q * fl[v / q];
    return f;
  }
  fail(ErrorKind::NotDecomposable, "ring over Z_" + std::to_string(n) + " is neither a group ring, tensor nor wreath");
}

}  // namespace

Decomposition decompose(const SRing& a) { return decompose_rec(a); }

cc::Bijection realize_inner_multiplier(const SRing& a, const InnerMultiplier& m) { return realize_rec(a, 1, m); }

bool realizes(const SRing& a, const InnerMultiplier& m, const cc::Bijection& f, std::string* why) {
  const int n = a.n;
  if (static_cast<int>(f.size()) != n || f[0] != 0) {
    if (why) *why = "not a normalized map on Z_" + std::to_string(n);
    return false;
  }
  for (const auto& c : a.classes) {
    const Section s = sring::principal_section(a, c);
    const int q = s.order();
    const i64 lambda = m.unit(s);
    std::vector<int> ys;
    for (int v : c) ys.push_back(static_cast<int>(num::mulmod(lambda, sring::project(n, s, v), std::max(q, 1))));
    auto want = sring::preimage(n, s, ys);
    std::vector<int> got;
    for (int v : c) got.push_back(f[v]);
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) {
      if (why) *why = "class of " + std::to_string(c.front()) + " on section " + s.str() + " is not mapped by its unit";
      return false;
    }
  }
  return true;
}

bool is_ring_automorphism(const SRing& a, const cc::Bijection& f) {
  if (static_cast<int>(f.size()) != a.n || f[0] != 0) return false;
  for (int x = 0; x < a.n; ++x)
    if (a.class_of[f[x]] != a.class_of[x]) return false;
  return true;
}

bool is_scheme_isomorphism(const SRing& a, const cc::Bijection& f, const std::vector<int>& phi) {
  const int n = a.n;
  if (static_cast<int>(f.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : f) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int d = y >= x ? y - x : y - x + n;
      const int fd = f[y] >= f[x] ? f[y] - f[x] : f[y] - f[x] + n;
      if (a.class_of[fd] != phi[a.class_of[d]]) return false;
    }
  return true;
}

bool in_mult_aut(const SRing& fused, const SRing& coset_ring, const InnerMultiplier& m) {
  const auto f = realize_inner_multiplier(coset_ring, m);
  if (!realizes(coset_ring, m, f)) return false;
  std::vector<int> id(fused.rank());
  for (int i = 0; i < fused.rank(); ++i) id[i] = i;
  return is_scheme_isomorphism(fused, f, id);
}

}  // namespace wlh::mult
