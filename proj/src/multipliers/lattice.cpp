#include <algorithm>
#include <bit>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "wlh/multipliers.hpp"
#include "wlh/numeric.hpp"

namespace wlh::mult {

namespace {

Mask side_mask(int b, bool u_side) {
  Mask m = 0;
  for (int v = 0; v < b; ++v) m |= BaseShape::vertex_mask(u_side ? v : b + v);
  return m;
}

/// Level of a side mask of an A-subgroup: the i with G_{i-1} < part <= G_i, 0 for the trivial part.
/// Returns -1 when the part is not of that shape.
int side_level(int b, int first_vertex, Mask part) {
  int top = 0;
  for (int i = 1; i <= b; ++i)
    if (part & BaseShape::vertex_mask(first_vertex + i - 1)) top = i;
  for (int i = 1; i < top; ++i)
    if ((part & BaseShape::vertex_mask(first_vertex + i - 1)) != BaseShape::vertex_mask(first_vertex + i - 1))
      return -1;
  return top;
}

}  // namespace

Mask BaseShape::g_u(int i) const {
  Mask m = 0;
  for (int v = 0; v < i; ++v) m |= vertex_mask(v);
  return m;
}

Mask BaseShape::g_w(int j) const {
  Mask m = 0;
  for (int v = 0; v < j; ++v) m |= vertex_mask(b() + v);
  return m;
}

Mask BaseShape::g(int i, int j) const { return g_u(std::max(i, 0)) | g_w(std::max(j, 0)); }

PSection BaseShape::vertex_section(int v) const {
  if (v < b()) return PSection{g_u(v + 1), g_u(v)};
  return PSection{g_w(v - b() + 1), g_w(v - b())};
}

PSection BaseShape::pair_section(int i, int j) const { return PSection{g(i, j), g(i - 1, j - 1)}; }

BaseShape make_shape(std::vector<std::pair<i64, i64>> factors) {
  if (factors.empty() || factors.size() % 2 != 0) fail(ErrorKind::BadParams, "need an even positive number of vertex factors");
  if (factors.size() > 31) fail(ErrorKind::BadParams, "at most 31 vertex factors are supported");
  std::set<i64> seen;
  for (const auto& [p, q] : factors) {
    if (!(p < q)) fail(ErrorKind::BadParams, "each factor needs p < q, got " + std::to_string(p) + "," + std::to_string(q));
    for (i64 r : {p, q}) {
      if (r < 5 || !num::is_prime(r)) fail(ErrorKind::BadParams, std::to_string(r) + " is not a prime >= 5");
      if (!seen.insert(r).second) fail(ErrorKind::BadParams, "prime " + std::to_string(r) + " is used twice");
    }
  }
  return BaseShape{std::move(factors)};
}

i64 mask_order(const BaseShape& shape, Mask m) {
  i64 out = 1;
  for (int i = 0; i < 2 * shape.a(); ++i)
    if (m >> i & 1) {
      if (__builtin_mul_overflow(out, shape.prime(i), &out))
        fail(ErrorKind::BadParams, "subgroup order exceeds 64-bit range");
    }
  return out;
}

std::string mask_order_string(const BaseShape& shape, Mask m) {
  boost::multiprecision::cpp_int out = 1;
  for (int i = 0; i < 2 * shape.a(); ++i)
    if (m >> i & 1) out *= shape.prime(i);
  return out.str();
}

bool is_base_subgroup(const BaseShape& shape, Mask m) {
  const int b = shape.b();
  if (m & ~(side_mask(b, true) | side_mask(b, false))) return false;
  return side_level(b, 0, m & side_mask(b, true)) >= 0 && side_level(b, b, m & side_mask(b, false)) >= 0;
}

bool is_subsection(const PSection& s, const PSection& t) {
  return (s.U & ~t.U) == 0 && (t.L & ~s.L) == 0;
}

bool is_multiple(const PSection& t, const PSection& s) { return s.L == (s.U & t.L) && t.U == (s.U | t.L); }

std::vector<PSection> base_s0_sections(const BaseShape& shape) {
  const int b = shape.b();
  std::set<PSection> out;
  for (int i = 0; i <= b; ++i)
    for (int j = 0; j <= b; ++j) {
      if (i == 0 && j == 0) continue;
      const PSection top = shape.pair_section(i, j);
      const Mask free = top.U & ~top.L;
      // Every subset of the free primes gives an A-subgroup between L and U.
      for (Mask tu = free;; tu = (tu - 1) & free) {
        for (Mask tl = tu;; tl = (tl - 1) & tu) {
          out.insert(PSection{top.L | tu, top.L | tl});
          if (tl == 0) break;
        }
        if (tu == 0) break;
      }
    }
  return {out.begin(), out.end()};
}

std::vector<PSection> base_principal_sections(const BaseShape& shape) {
  const int b = shape.b();
  std::set<PSection> out{PSection{0, 0}};
  // A class is fixed by its levels (i, j) and the primes its projection generates on s_{i,j}.
  for (int i = 0; i <= b; ++i)
    for (int j = 0; j <= b; ++j) {
      if (i == 0 && j == 0) continue;
      const Mask low = shape.g(i - 1, j - 1);
      const Mask fu = i ? BaseShape::vertex_mask(i - 1) : 0;
      const Mask fw = j ? BaseShape::vertex_mask(b + j - 1) : 0;
      for (Mask tu = fu;; tu = (tu - 1) & fu) {
        for (Mask tw = fw;; tw = (tw - 1) & fw) {
          if ((i == 0 || tu) && (j == 0 || tw)) out.insert(PSection{low | tu | tw, low});
          if (tw == 0) break;
        }
        if (tu == 0) break;
      }
    }
  return {out.begin(), out.end()};
}

std::vector<std::pair<int, int>> covering_pairs(const BaseShape& shape, const PSection& s) {
  std::vector<std::pair<int, int>> out;
  const int b = shape.b();
  for (int i = 0; i <= b; ++i)
    for (int j = 0; j <= b; ++j)
      if ((i || j) && is_subsection(s, shape.pair_section(i, j))) out.emplace_back(i, j);
  return out;
}

std::vector<int> covering_vertices(const BaseShape& shape, const std::vector<PSection>& sections) {
  const int b = shape.b();
  // Options per section and side: genuine vertex levels i >= 1 that can cover it.
  std::vector<std::vector<int>> u_opts, w_opts;
  for (const auto& s : sections) {
    std::set<int> us, ws;
    for (auto [i, j] : covering_pairs(shape, s)) {
      // Level 0 stands for the added trivial vertex; then the next level also covers.
      if (i >= 1) us.insert(i);
      if (j >= 1) ws.insert(j);
    }
    if (us.empty() || ws.empty()) fail(ErrorKind::SectionNotCovered, "section is below no s_{u,w}");
    u_opts.emplace_back(us.begin(), us.end());
    w_opts.emplace_back(ws.begin(), ws.end());
  }
  auto pick = [](const std::vector<std::vector<int>>& opts) {
    std::set<int> chosen;
    for (const auto& o : opts)
      if (o.size() == 1) chosen.insert(o[0]);
    for (const auto& o : opts) {
      bool hit = false;
      for (int x : o) hit = hit || chosen.count(x);
      if (!hit) chosen.insert(o[0]);
    }
    return chosen;
  };
  std::vector<int> out;
  for (int i : pick(u_opts)) out.push_back(i - 1);
  for (int j : pick(w_opts)) out.push_back(b + j - 1);
  std::sort(out.begin(), out.end());
  return out;
}

Section to_section(const BaseShape& shape, const PSection& s) {
  const i64 u = mask_order(shape, s.U), l = mask_order(shape, s.L);
  if (u > INT32_MAX) fail(ErrorKind::BadParams, "section too large for explicit form");
  return Section{static_cast<int>(u), static_cast<int>(l)};
}

PSection to_psection(const BaseShape& shape, const Section& s) {
  PSection out;
  int u = s.U, l = s.L;
  for (int i = 0; i < 2 * shape.a(); ++i) {
    const i64 p = shape.prime(i);
    if (u % p == 0) u /= static_cast<int>(p), out.U |= Mask{1} << i;
    if (l % p == 0) l /= static_cast<int>(p), out.L |= Mask{1} << i;
  }
  if (u != 1 || l != 1) fail(ErrorKind::NotASection, s.str() + " does not factor over the instance primes");
  return out;
}

}  // namespace wlh::mult
