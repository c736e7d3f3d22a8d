#include <algorithm>
#include <atomic>
#include <sstream>
#include <unordered_map>

#include "wlh/cc.hpp"

namespace wlh::cc {

namespace {

std::atomic<int> g_dense_threshold{128};

std::string pair_str(int a, int b) {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

/// Sorted key multiset of (cell(a,g), cell(g,b)) over all g, run-length encoded.
void path_signature(const RelationPartition& p, int a, int b, std::vector<std::uint64_t>& keys,
                    std::vector<StructureEntry>& out) {
  const int n = p.size;
  const std::uint64_t R = static_cast<std::uint64_t>(p.cells);
  keys.resize(n);
  for (int g = 0; g < n; ++g) keys[g] = static_cast<std::uint64_t>(p.at(a, g)) * R + p.at(g, b);
  std::sort(keys.begin(), keys.end());
  out.clear();
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && keys[j] == keys[i]) ++j;
    out.push_back({static_cast<int>(keys[i] / R), static_cast<int>(keys[i] % R), j - i});
    i = j;
  }
}

[[noreturn]] void cc3_failure(const std::vector<StructureEntry>& want, const std::vector<StructureEntry>& got, int t,
                              std::pair<int, int> rep, int a, int b) {
  // Locate the first (r, s) whose counts differ.
  std::size_t i = 0, j = 0;
  while (i < want.size() || j < got.size()) {
    if (j == got.size() || (i < want.size() && std::make_pair(want[i].r, want[i].s) < std::make_pair(got[j].r, got[j].s))) {
      fail(ErrorKind::AxiomViolation, "CC3: c[" + std::to_string(want[i].r) + "][" + std::to_string(want[i].s) + "][" +
                                          std::to_string(t) + "] is " + std::to_string(want[i].count) + " at " +
                                          pair_str(rep.first, rep.second) + " but 0 at " + pair_str(a, b));
    }
    if (i == want.size() || std::make_pair(got[j].r, got[j].s) < std::make_pair(want[i].r, want[i].s)) {
      fail(ErrorKind::AxiomViolation, "CC3: c[" + std::to_string(got[j].r) + "][" + std::to_string(got[j].s) + "][" +
                                          std::to_string(t) + "] is 0 at " + pair_str(rep.first, rep.second) + " but " +
                                          std::to_string(got[j].count) + " at " + pair_str(a, b));
    }
    if (want[i].count != got[j].count) {
      fail(ErrorKind::AxiomViolation, "CC3: c[" + std::to_string(got[j].r) + "][" + std::to_string(got[j].s) + "][" +
                                          std::to_string(t) + "] is " + std::to_string(want[i].count) + " at " +
                                          pair_str(rep.first, rep.second) + " but " + std::to_string(got[j].count) +
                                          " at " + pair_str(a, b));
    }
    ++i, ++j;
  }
  fail(ErrorKind::AxiomViolation, "CC3 at cell " + std::to_string(t));
}

bool same_signature(const std::vector<StructureEntry>& x, const std::vector<StructureEntry>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].r != y[i].r || x[i].s != y[i].s || x[i].count != y[i].count) return false;
  return true;
}

}  // namespace

void set_dense_threshold(int cells) { g_dense_threshold = cells; }
int dense_threshold() { return g_dense_threshold.load(); }

RelationPartition RelationPartition::from_labels(int size, const std::vector<std::int64_t>& labels) {
  RelationPartition p;
  p.size = size;
  p.cell_of.resize(labels.size());
  std::unordered_map<std::int64_t, int> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = ids.emplace(labels[i], static_cast<int>(ids.size()));
    p.cell_of[i] = it->second;
  }
  p.cells = static_cast<int>(ids.size());
  return p;
}

RelationPartition RelationPartition::from_residue_colors(int size, const std::vector<int>& colors) {
  RelationPartition p;
  p.size = size;
  p.cell_of.resize(static_cast<std::size_t>(size) * size);
  int mx = -1;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      int d = b - a;
      if (d < 0) d += size;
      p.cell_of[static_cast<std::size_t>(a) * size + b] = colors[d];
    }
  for (int c : colors) mx = std::max(mx, c);
  p.cells = mx + 1;
  return p;
}

std::int64_t CoherentConfiguration::intersection(int r, int s, int t) const {
  const int R = rank();
  if (!dense_.empty()) return dense_[(static_cast<std::size_t>(t) * R + r) * R + s];
  const auto& v = structure_[t];
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(r, s), [](const StructureEntry& e, std::pair<int, int> k) {
    return std::make_pair(e.r, e.s) < k;
  });
  if (it != v.end() && it->r == r && it->s == s) return it->count;
  return 0;
}

bool CoherentConfiguration::is_regular() const {
  if (!is_scheme()) return false;
  for (auto v : valency_)
    if (v != 1) return false;
  return true;
}

CoherentConfiguration make_config(RelationPartition p) {
  const int n = p.size;
  if (n < 1) fail(ErrorKind::MalformedInput, "point count must be positive");
  if (p.cell_of.size() != static_cast<std::size_t>(n) * n) fail(ErrorKind::MalformedInput, "cell_of has wrong length");
  const int R = p.cells;
  CoherentConfiguration x;
  x.rep_.assign(R, {-1, -1});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = p.at(a, b);
      if (c < 0 || c >= R) fail(ErrorKind::MalformedInput, "cell index out of range at " + pair_str(a, b));
      if (x.rep_[c].first < 0) x.rep_[c] = {a, b};
    }
  for (int c = 0; c < R; ++c)
    if (x.rep_[c].first < 0) fail(ErrorKind::MalformedInput, "cell " + std::to_string(c) + " is empty");

  bool invariant = true;
  for (int a = 0; a < n && invariant; ++a)
    for (int b = 0; b < n; ++b)
      if (p.at(a, b) != p.at(0, ((b - a) % n + n) % n)) {
        invariant = false;
        break;
      }
  x.translation_invariant_ = invariant;

  // CC1
  std::vector<char> has_diag(R, 0), has_off(R, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) (a == b ? has_diag : has_off)[p.at(a, b)] = 1;
  for (int c = 0; c < R; ++c)
    if (has_diag[c] && has_off[c]) {
      int a = 0;
      while (p.at(a, a) != c) ++a;
      int u = -1, v = -1;
      for (int i = 0; i < n && u < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && p.at(i, j) == c) {
            u = i, v = j;
            break;
          }
      fail(ErrorKind::AxiomViolation, "CC1: cell " + std::to_string(c) + " contains diagonal pair " + pair_str(a, a) +
                                          " and off-diagonal pair " + pair_str(u, v));
    }
  x.diagonal_.assign(R, false);
  for (int c = 0; c < R; ++c) x.diagonal_[c] = has_diag[c];

  // CC2
  x.transpose_.assign(R, -1);
  for (int c = 0; c < R; ++c) x.transpose_[c] = p.at(x.rep_[c].second, x.rep_[c].first);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.at(b, a) != x.transpose_[p.at(a, b)])
        fail(ErrorKind::AxiomViolation, "CC2: transpose of cell " + std::to_string(p.at(a, b)) + " meets cells " +
                                            std::to_string(x.transpose_[p.at(a, b)]) + " and " +
                                            std::to_string(p.at(b, a)) + "; witness " + pair_str(a, b));

  // Fibers, ordered by least point.
  std::vector<int> fiber_of_cell(R, -1);
  x.fiber_of_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    int c = p.at(a, a);
    if (fiber_of_cell[c] < 0) {
      fiber_of_cell[c] = static_cast<int>(x.fibers_.size());
      x.fibers_.emplace_back();
    }
    x.fiber_of_[a] = fiber_of_cell[c];
    x.fibers_[fiber_of_cell[c]].push_back(a);
  }
  x.src_fiber_.resize(R);
  x.dst_fiber_.resize(R);
  for (int c = 0; c < R; ++c) {
    x.src_fiber_[c] = x.fiber_of_[x.rep_[c].first];
    x.dst_fiber_[c] = x.fiber_of_[x.rep_[c].second];
  }

  // CC3: every pair of a cell has the representative's path signature.
  x.structure_.resize(R);
  std::vector<std::uint64_t> keys;
  std::vector<StructureEntry> sig;
  for (int c = 0; c < R; ++c) path_signature(p, x.rep_[c].first, x.rep_[c].second, keys, x.structure_[c]);
  if (invariant) {
    for (int d = 0; d < n; ++d) {
      int c = p.at(0, d);
      if (x.rep_[c] == std::make_pair(0, d)) continue;
      path_signature(p, 0, d, keys, sig);
      if (!same_signature(sig, x.structure_[c])) cc3_failure(x.structure_[c], sig, c, x.rep_[c], 0, d);
    }
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int c = p.at(a, b);
        if (x.rep_[c] == std::make_pair(a, b)) continue;
        path_signature(p, a, b, keys, sig);
        if (!same_signature(sig, x.structure_[c])) cc3_failure(x.structure_[c], sig, c, x.rep_[c], a, b);
      }
  }

  x.valency_.assign(R, 0);
  for (int c = 0; c < R; ++c) {
    int a = x.rep_[c].first;
    for (int b = 0; b < n; ++b)
      if (p.at(a, b) == c) ++x.valency_[c];
  }
  if (R <= dense_threshold()) {
    x.dense_.assign(static_cast<std::size_t>(R) * R * R, 0);
    for (int t = 0; t < R; ++t)
      for (const auto& e : x.structure_[t]) x.dense_[(static_cast<std::size_t>(t) * R + e.r) * R + e.s] = e.count;
  }
  x.part_ = std::move(p);
  return x;
}

CoherentConfiguration trivial(int n) {
  std::vector<std::int64_t> labels(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) labels[static_cast<std::size_t>(a) * n + b] = (a == b) ? 0 : 1;
  return make_config(RelationPartition::from_labels(n, labels));
}

CoherentConfiguration discrete(int n) {
  std::vector<std::int64_t> labels(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<std::int64_t>(i);
  return make_config(RelationPartition::from_labels(n, labels));
}

CoherentConfiguration regular_cyclic(int n) {
  std::vector<int> colors(n);
  for (int d = 0; d < n; ++d) colors[d] = d;
  return make_config(RelationPartition::from_residue_colors(n, colors));
}

Relation cells_to_relation(const CoherentConfiguration& x, const std::vector<int>& cells) {
  std::vector<char> in(x.rank(), 0);
  for (int c : cells) in.at(c) = 1;
  Relation out;
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      if (in[x.cell(a, b)]) out.emplace_back(a, b);
  return out;
}

}  // namespace wlh::cc
