#include <algorithm>
#include <map>

#include "wlh/cc.hpp"

namespace wlh::cc {

namespace {

using Sig = std::vector<std::uint64_t>;

/// Appends the run-length encoding of sorted keys, one word per run: key * (n + 1) + count.
void append_runs(std::vector<std::uint64_t>& keys, std::uint64_t n, Sig& sig) {
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    sig.push_back(keys[i] * (n + 1) + (j - i));
    i = j;
  }
}

/// Interns signatures; ids follow lexicographic order of the signatures.
class Interner {
 public:
  std::size_t add(Sig&& s) {
    auto [it, fresh] = table_.emplace(std::move(s), 0);
    (void)fresh;
    slots_.push_back(it);
    return slots_.size() - 1;
  }
  /// Assigns canonical ids and returns them in insertion order.
  std::vector<int> finish(int* count) {
    int id = 0;
    for (auto& [k, v] : table_) v = id++;
    *count = id;
    std::vector<int> out(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) out[i] = slots_[i]->second;
    return out;
  }

 private:
  std::map<Sig, int> table_;
  std::vector<std::map<Sig, int>::iterator> slots_;
};

}  // namespace

RelationPartition closure_partition(int n, const std::vector<Relation>& generators) {
  const std::size_t N = static_cast<std::size_t>(n) * n;
  std::vector<std::vector<char>> member(generators.size(), std::vector<char>(N, 0));
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (auto [a, b] : generators[g]) {
      if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::MalformedInput, "relation pair outside the point set");
      member[g][static_cast<std::size_t>(a) * n + b] = 1;
    }

  std::vector<int> color(N);
  int count = 0;
  {
    Interner in;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Sig s{static_cast<std::uint64_t>(a == b)};
        for (const auto& m : member) {
          s.push_back(m[static_cast<std::size_t>(a) * n + b]);
          s.push_back(m[static_cast<std::size_t>(b) * n + a]);
        }
        in.add(std::move(s));
      }
    color = in.finish(&count);
  }

  std::vector<std::uint64_t> keys(n);
  while (true) {
    Interner in;
    const std::uint64_t C = static_cast<std::uint64_t>(count);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (int g = 0; g < n; ++g)
          keys[g] = static_cast<std::uint64_t>(color[static_cast<std::size_t>(a) * n + g]) * C +
                    color[static_cast<std::size_t>(g) * n + b];
        Sig s{static_cast<std::uint64_t>(color[static_cast<std::size_t>(a) * n + b]),
              static_cast<std::uint64_t>(color[static_cast<std::size_t>(b) * n + a])};
        append_runs(keys, n, s);
        in.add(std::move(s));
      }
    int next = 0;
    auto refined = in.finish(&next);
    color = std::move(refined);
    if (next == count) break;
    count = next;
  }

  RelationPartition p;
  p.size = n;
  p.cells = count;
  p.cell_of.assign(color.begin(), color.end());
  return p;
}

CoherentConfiguration coherent_closure(int n, const std::vector<Relation>& generators) {
  return make_config(closure_partition(n, generators));
}

namespace {

/// Refines a residue coloring of Z_n to the stable Cayley closure coloring.
std::vector<int> refine_residues(int n, std::vector<int> color, int count, int* rounds) {
  auto neg = [n](int d) { return d == 0 ? 0 : n - d; };
  int r = 0;
  std::vector<std::uint64_t> keys(n);
  while (true) {
    ++r;
    Interner in;
    const std::uint64_t C = static_cast<std::uint64_t>(count);
    for (int d = 0; d < n; ++d) {
      // Pair (0, d): intermediate x contributes (c(0, x), c(x, d)) = (c(x), c(d - x)).
      int y = d;
      for (int x = 0; x < n; ++x) {
        keys[x] = static_cast<std::uint64_t>(color[x]) * C + color[y];
        if (--y < 0) y += n;
      }
      Sig s{static_cast<std::uint64_t>(color[d]), static_cast<std::uint64_t>(color[neg(d)])};
      append_runs(keys, n, s);
      in.add(std::move(s));
    }
    int next = 0;
    color = in.finish(&next);
    if (next == count) break;
    count = next;
  }
  if (rounds) *rounds = r;
  return color;
}

}  // namespace

std::vector<int> cayley_closure_colors(int n, const std::vector<std::vector<std::int64_t>>& generators, int* rounds) {
  std::vector<std::vector<char>> member(generators.size(), std::vector<char>(n, 0));
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (auto x : generators[g]) member[g][((x % n) + n) % n] = 1;
  auto neg = [n](int d) { return d == 0 ? 0 : n - d; };
  Interner in;
  for (int d = 0; d < n; ++d) {
    Sig s{static_cast<std::uint64_t>(d == 0)};
    for (const auto& m : member) {
      s.push_back(m[d]);
      s.push_back(m[neg(d)]);
    }
    in.add(std::move(s));
  }
  int count = 0;
  std::vector<int> color = in.finish(&count);
  return refine_residues(n, std::move(color), count, rounds);
}

std::vector<int> cayley_closure_of_labels(int n, const std::vector<int>& labels, int* rounds) {
  if (static_cast<int>(labels.size()) != n) fail(ErrorKind::MalformedInput, "one label per residue expected");
  auto neg = [n](int d) { return d == 0 ? 0 : n - d; };
  Interner in;
  for (int d = 0; d < n; ++d)
    in.add(Sig{static_cast<std::uint64_t>(d == 0), static_cast<std::uint64_t>(labels[d]),
                static_cast<std::uint64_t>(labels[neg(d)])});
  int count = 0;
  std::vector<int> color = in.finish(&count);
  return refine_residues(n, std::move(color), count, rounds);
}

}  // namespace wlh::cc
