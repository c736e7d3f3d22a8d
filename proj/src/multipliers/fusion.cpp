#include <algorithm>
#include <numeric>
#include <set>

#include "wlh/multipliers.hpp"
#include "wlh/numeric.hpp"

namespace wlh::mult {

namespace {

void check_group(const std::vector<InnerMultiplier>& group) {
  if (group.empty()) fail(ErrorKind::NotAGroup, "empty multiplier family");
  const std::set<InnerMultiplier> members(group.begin(), group.end());
  const auto& keys = group.front().units;
  std::vector<Section> secs;
  for (const auto& [s, x] : keys) secs.push_back(s);
  if (!members.count(identity_multiplier(secs))) fail(ErrorKind::NotAGroup, "family lacks the identity");
  for (const auto& x : members) {
    if (!members.count(inverse(x))) fail(ErrorKind::NotAGroup, "family is not closed under inverses");
    for (const auto& y : members)
      if (!members.count(compose(x, y))) fail(ErrorKind::NotAGroup, "family is not closed under composition");
  }
}

}  // namespace

SRing algebraic_fusion(const SRing& a, const std::vector<InnerMultiplier>& group) {
  if (!sring::is_coset_sring(a)) fail(ErrorKind::NotACosetSRing, "algebraic fusion needs a coset ring");
  check_group(group);
  const int n = a.n;
  std::vector<int> parent(a.rank());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (int c = 0; c < a.rank(); ++c) {
    const auto& x = a.classes[c];
    const Section s = sring::principal_section(a, x);
    const int q = s.order(), step = n / s.U;
    const int t = sring::project(n, s, x.front());
    for (const auto& m : group) {
      const int y = static_cast<int>(num::mulmod(m.unit(s), t, std::max(q, 1)));
      // The class of a coset ring over s is one point of s; its image is the class over y.
      const int d = a.class_of[y * step];
      if (a.classes[d].size() != x.size() || sring::project(n, s, a.classes[d].front()) != y)
        fail(ErrorKind::IdentityFails, "image of a class is not a class on section " + s.str());
      const int r1 = find(c), r2 = find(d);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = find(a.class_of[v]);
  SRing fused = sring::sring_from_labels(n, labels);

  // The restriction law: on every S0 section the fusion is the cyclotomic ring of the section units.
  for (const auto& s : sring::s0_sections(a)) {
    std::vector<i64> gens;
    for (const auto& m : group) gens.push_back(m.unit(s));
    if (s.order() == 1) continue;
    if (!(sring::restrict_sring(fused, s) == sring::cyclotomic(s.order(), gens)))
      fail(ErrorKind::IdentityFails, "restriction law fails on section " + s.str());
  }
  return fused;
}

}  // namespace wlh::mult
