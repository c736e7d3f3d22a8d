#include "wlh/numeric.hpp"
#include "wlh/sring.hpp"

namespace wlh::sring {

cc::AutGroup automorphism_group(const SRing& a, std::uint64_t node_budget) {
  const int n = a.n;
  const auto& cls = a.class_of;
  return cc::automorphism_group(
      n, [&cls, n](int x, int y) { return cls[y >= x ? y - x : y - x + n]; }, node_budget);
}

std::vector<cc::Bijection> normalized_isos(const SRing& a, const SRing& b, const std::vector<int>& phi,
                                           const cc::SearchOptions& opts) {
  if (a.n != b.n) fail(ErrorKind::DegreeMismatch, "rings over groups of different orders");
  if (static_cast<int>(phi.size()) != a.rank() || a.rank() != b.rank())
    fail(ErrorKind::MalformedInput, "phi must map every class of the source ring");
  const int n = a.n;
  auto o = opts;
  o.pins.insert(o.pins.begin(), {0, 0});
  return cc::colored_isomorphisms(
      n, [&](int x, int y) { return phi[a.class_of[y >= x ? y - x : y - x + n]]; },
      [&](int x, int y) { return b.class_of[y >= x ? y - x : y - x + n]; }, o);
}

bool is_normal(const SRing& a, std::uint64_t node_budget) {
  const int n = a.n;
  if (a.rank() == n) return true;  // group ring: Aut is the regular group itself
  const auto aut = automorphism_group(a, node_budget);
  for (const auto& g : aut.generators) {
    std::vector<int> inv(n);
    for (int x = 0; x < n; ++x) inv[g[x]] = x;
    // g t g^-1 with t = +1 must again be a translation.
    const int shift = g[(inv[0] + 1) % n];
    for (int x = 0; x < n; ++x)
      if (g[(inv[x] + 1) % n] != (x + shift) % n) return false;
  }
  return true;
}

NormalityReport classify_normality(const SRing& a, int budget_points) {
  NormalityReport rep;
  const auto poset = sections(a);
  rep.s0 = s0_sections(a, poset);
  if (a.n <= budget_points) rep.is_normal = is_normal(a);

  // Every section of a coset ring restricts to a group ring, which is normal.
  if (is_coset_sring(a)) {
    rep.structural = true;
    rep.is_totally_normal = true;
    return rep;
  }
  bool unresolved = false;
  for (const auto& s : rep.s0) {
    if (s.order() > budget_points) {
      unresolved = true;
      continue;
    }
    if (!is_normal(restrict_sring(a, s))) rep.non_normal.push_back(s);
  }
  if (!rep.non_normal.empty()) rep.is_totally_normal = false;
  else if (!unresolved) rep.is_totally_normal = true;
  return rep;
}

}  // namespace wlh::sring
