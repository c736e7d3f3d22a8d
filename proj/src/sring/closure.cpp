#include <map>

#include "wlh/numeric.hpp"
#include "wlh/sring.hpp"

namespace wlh::sring {

bool is_coset_sring(const SRing& a) {
  for (const auto& c : a.classes)
    if (!is_coset(a.n, c)) return false;
  return true;
}

bool is_quasidense(const SRing& a) {
  for (const auto& s : sections(a).sections) {
    // A one-point section carries the rank 1 ring and is not constrained.
    if (s.order() < 2) continue;
    if (restrict_sring(a, s).rank() == 2 && !num::is_prime(s.order())) return false;
  }
  return true;
}

bool refines(const SRing& a, const SRing& b) {
  if (a.n != b.n) return false;
  for (const auto& c : a.classes)
    for (int x : c)
      if (b.class_of[x] != b.class_of[c[0]]) return false;
  return true;
}

SRing coset_closure(const SRing& a) {
  if (!is_quasidense(a)) fail(ErrorKind::NotQuasidense, "coset closure needs a quasidense ring");
  SRing cur = a;
  for (;;) {
    std::vector<int> labels(cur.n);
    std::map<std::pair<int, int>, int> ids;
    bool split = false;
    for (int c = 0; c < cur.rank(); ++c) {
      const auto& x = cur.classes[c];
      const int r = radical_order(cur.n, x);
      const int step = cur.n / r;  // rad(X) = multiples of step
      if (static_cast<int>(x.size()) != r) split = true;
      for (int v : x) {
        auto key = std::make_pair(c, static_cast<int>(x.size()) == r ? 0 : v % step);
        auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
        labels[v] = it->second;
      }
    }
    if (!split) return cur;
    cur = sring_from_labels(cur.n, cc::cayley_closure_of_labels(cur.n, labels));
  }
}

}  // namespace wlh::sring
