#include <algorithm>
#include <iterator>

#include "wlh/multipliers.hpp"
#include "wlh/numeric.hpp"

namespace wlh::mult {

LocalSystemReport check_local_system(const SRing& fused, const SRing& coset_ring, const LocalSystem& l,
                                     const OuterMultiplier& c) {
  if (l.keys.size() != l.values.size()) fail(ErrorKind::MalformedInput, "local system needs one value per key");
  LocalSystemReport rep;
  rep.keys = l.keys.size();

  for (std::size_t i = 0; i < l.keys.size(); ++i) {
    if (static_cast<int>(l.keys[i].size()) > l.k) fail(ErrorKind::MalformedInput, "key larger than the locality bound");
    for (const auto& s : l.keys[i]) {
      auto it = c.cosets.find(s);
      if (it == c.cosets.end()) fail(ErrorKind::SectionNotCovered, "outer multiplier misses section " + s.str());
      const i64 x = num::mod(l.values[i].unit(s), std::max(s.order(), 1));
      bool in = false;
      for (i64 y : it->second) in = in || num::mod(y, std::max(s.order(), 1)) == x;
      ++rep.containments;
      if (!in) fail(ErrorKind::CoherenceViolation, "value of key " + std::to_string(i) + " leaves the coset on " + s.str());
    }
  }

  for (const auto& w : l.correction_pool) {
    if (!in_mult_aut(fused, coset_ring, w))
      fail(ErrorKind::CoherenceViolation, "correction witness is not induced by an automorphism");
    ++rep.corrections_certified;
  }

  for (std::size_t i = 0; i < l.keys.size(); ++i)
    for (std::size_t j = i + 1; j < l.keys.size(); ++j) {
      std::vector<Section> common;
      std::set_intersection(l.keys[i].begin(), l.keys[i].end(), l.keys[j].begin(), l.keys[j].end(),
                            std::back_inserter(common));
      ++rep.pairs;
      if (common.empty()) continue;
      auto it = l.correction_of.find({static_cast<int>(i), static_cast<int>(j)});
      const InnerMultiplier* w = it == l.correction_of.end() ? nullptr : &l.correction_pool.at(it->second);
      for (const auto& s : common) {
        const int q = std::max(s.order(), 1);
        const i64 corr = w ? w->unit(s) : 1;
        if (num::mod(l.values[i].unit(s), q) != num::mulmod(l.values[j].unit(s), corr, q))
          fail(ErrorKind::CoherenceViolation, "correction identity fails for keys " + std::to_string(i) + ", " +
                                                  std::to_string(j) + " on " + s.str());
      }
    }
  return rep;
}

}  // namespace wlh::mult
