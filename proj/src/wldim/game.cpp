#include <algorithm>
#include <unordered_map>

#include "wlh/wldim.hpp"

namespace wlh::wldim {

namespace {

using Key = std::uint64_t;
constexpr int kFree = -1;

/// Positions are multisets of pebbled pairs a * n + a'; free pebbles are kFree. Sorted, fixed length.
struct Codec {
  int n;
  int pebbles;
  Key encode(const std::vector<int>& pos) const {
    Key k = 0;
    for (int p : pos) k = k * (static_cast<Key>(n) * n + 1) + static_cast<Key>(p + 1);
    return k;
  }
};

struct Solver {
  const Structure& x;
  const Structure& y;
  const std::vector<int>& phi;
  int n;
  int pebbles;
  Codec codec;
  std::vector<std::vector<int>> states;
  std::unordered_map<Key, int> index;
  std::vector<char> alive;

  bool consistent(const std::vector<int>& pos) const {
    for (int p : pos) {
      if (p == kFree) continue;
      for (int q : pos) {
        if (q == kFree) continue;
        const int a = p / n, a2 = p % n, b = q / n, b2 = q % n;
        if ((a == b) != (a2 == b2)) return false;
        if (phi[x.color(a, b)] != y.color(a2, b2)) return false;
      }
    }
    return true;
  }

  std::vector<int> place(std::vector<int> pos, std::size_t slot, int pair) const {
    pos[slot] = pair;
    std::sort(pos.begin(), pos.end());
    return pos;
  }

  int find(const std::vector<int>& pos) const {
    auto it = index.find(codec.encode(pos));
    return it == index.end() ? -1 : it->second;
  }

  void enumerate(std::size_t max_states) {
    std::vector<int> empty(pebbles, kFree);
    states.push_back(empty);
    index.emplace(codec.encode(empty), 0);
    for (std::size_t head = 0; head < states.size(); ++head) {
      const auto pos = states[head];
      for (std::size_t slot = 0; slot < pos.size(); ++slot) {
        if (slot > 0 && pos[slot] == pos[slot - 1]) continue;
        for (int pair = 0; pair < n * n; ++pair) {
          auto next = place(pos, slot, pair);
          if (!consistent(next)) continue;
          if (index.emplace(codec.encode(next), static_cast<int>(states.size())).second) {
            states.push_back(std::move(next));
            if (states.size() > max_states) fail(ErrorKind::BudgetExceeded, "pebble game position count exceeds budget");
          }
        }
      }
    }
  }

  /// Perfect matching between points of x and y over the allowed pairs (bitmask rows).
  bool perfect(const std::vector<std::uint32_t>& allowed) const {
    std::vector<int> match_y(n, -1);
    for (int a = 0; a < n; ++a) {
      std::vector<char> seen(n, 0);
      auto augment = [&](auto&& self, int u) -> bool {
        for (int v = 0; v < n; ++v) {
          if (!(allowed[u] >> v & 1) || seen[v]) continue;
          seen[v] = 1;
          if (match_y[v] < 0 || self(self, match_y[v])) {
            match_y[v] = u;
            return true;
          }
        }
        return false;
      };
      if (!augment(augment, a)) return false;
    }
    return true;
  }

  /// Duplicator survives every pebble choice at this position given the current fixpoint.
  bool survives(const std::vector<int>& pos) const {
    std::vector<std::uint32_t> allowed(n);
    for (std::size_t slot = 0; slot < pos.size(); ++slot) {
      if (slot > 0 && pos[slot] == pos[slot - 1]) continue;
      std::fill(allowed.begin(), allowed.end(), 0);
      for (int a = 0; a < n; ++a)
        for (int a2 = 0; a2 < n; ++a2) {
          const int id = find(place(pos, slot, a * n + a2));
          if (id >= 0 && alive[id]) allowed[a] |= std::uint32_t{1} << a2;
        }
      if (!perfect(allowed)) return false;
    }
    return true;
  }
};

}  // namespace

const char* to_string(Winner w) { return w == Winner::Duplicator ? "duplicator" : "spoiler"; }

GameResult pebble_game(const Structure& x, const Structure& y, const std::vector<int>& phi, int pebbles,
                       const std::vector<int>& init_x, const std::vector<int>& init_y, int max_points) {
  if (x.n != y.n) fail(ErrorKind::DegreeMismatch, "structures have different point counts");
  if (x.n > max_points || x.n > 31)
    fail(ErrorKind::BudgetExceeded, "pebble game supports at most " + std::to_string(max_points) + " points");
  if (pebbles < 1) fail(ErrorKind::BadParams, "need at least one pebble");
  if (static_cast<int>(phi.size()) < x.colors()) fail(ErrorKind::BadParams, "phi does not cover the colors of x");
  for (int c : phi)
    if (c < 0) fail(ErrorKind::BadParams, "phi has a negative entry");

  GameResult res;
  const int n = x.n;
  if (init_x.size() != init_y.size()) {
    res.decided_at_start = true;
    return res;
  }
  if (static_cast<int>(init_x.size()) > pebbles) fail(ErrorKind::BadParams, "initial tuple longer than the pebble count");
  std::vector<int> start(pebbles, kFree);
  for (std::size_t i = 0; i < init_x.size(); ++i) {
    if (init_x[i] < 0 || init_x[i] >= n || init_y[i] < 0 || init_y[i] >= n)
      fail(ErrorKind::BadParams, "initial tuple point out of range");
    start[i] = init_x[i] * n + init_y[i];
  }
  std::sort(start.begin(), start.end());

  Solver s{x, y, phi, n, pebbles, Codec{n, pebbles}, {}, {}, {}};
  if (!s.consistent(start)) {
    res.decided_at_start = true;
    return res;
  }
  s.enumerate(20'000'000);
  s.alive.assign(s.states.size(), 1);
  res.states = s.states.size();
  for (bool changed = true; changed;) {
    changed = false;
    ++res.iterations;
    for (std::size_t i = 0; i < s.states.size(); ++i)
      if (s.alive[i] && !s.survives(s.states[i])) s.alive[i] = 0, changed = true;
  }
  res.winning_states = static_cast<std::size_t>(std::count(s.alive.begin(), s.alive.end(), 1));
  const int id = s.find(start);
  res.winner = (id >= 0 && s.alive[id]) ? Winner::Duplicator : Winner::Spoiler;
  return res;
}

}  // namespace wlh::wldim
