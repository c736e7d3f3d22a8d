#include <algorithm>
#include <map>
#include <numeric>

#include "wlh/cc.hpp"

namespace wlh::cc {

namespace {

int find(std::vector<int>& uf, int x) {
  while (uf[x] != x) x = uf[x] = uf[uf[x]];
  return x;
}

/// Labels each point by the least member of its class.
Equivalence least_member_labels(std::vector<int>& uf) {
  const int n = static_cast<int>(uf.size());
  Equivalence out(n);
  std::vector<int> least(n, n);
  for (int i = 0; i < n; ++i) least[find(uf, i)] = std::min(least[find(uf, i)], i);
  for (int i = 0; i < n; ++i) out[i] = least[find(uf, i)];
  return out;
}

}  // namespace

CoherentConfiguration tensor(const CoherentConfiguration& x, const CoherentConfiguration& y) {
  const int nx = x.size(), ny = y.size(), n = nx * ny;
  RelationPartition p;
  p.size = n;
  p.cells = x.rank() * y.rank();
  p.cell_of.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      p.cell_of[static_cast<std::size_t>(a) * n + b] = x.cell(a / ny, b / ny) * y.rank() + y.cell(a % ny, b % ny);
  return make_config(std::move(p));
}

CoherentConfiguration wreath(const CoherentConfiguration& x, const CoherentConfiguration& y) {
  if (!x.is_scheme() || !y.is_scheme()) fail(ErrorKind::NotAScheme, "wreath product needs two schemes");
  const int nx = x.size(), ny = y.size(), n = nx * ny;
  // Point (inner alpha, outer alpha') has index alpha' * nx + alpha, so blocks are contiguous.
  std::vector<int> outer_id(y.rank(), -1);
  int next = x.rank();
  for (int s = 0; s < y.rank(); ++s)
    if (!y.is_diagonal(s)) outer_id[s] = next++;
  RelationPartition p;
  p.size = n;
  p.cells = next;
  p.cell_of.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ao = a / nx, bo = b / nx;
      p.cell_of[static_cast<std::size_t>(a) * n + b] = (ao == bo) ? x.cell(a % nx, b % nx) : outer_id[y.cell(ao, bo)];
    }
  return make_config(std::move(p));
}

CoherentConfiguration quotient(const CoherentConfiguration& x, const Relation& e,
                               std::vector<std::vector<int>>* classes_out) {
  const int n = x.size();
  std::vector<char> in(static_cast<std::size_t>(n) * n, 0), support(n, 0);
  for (auto [a, b] : e) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::MalformedInput, "pair outside the point set");
    in[static_cast<std::size_t>(a) * n + b] = 1;
    support[a] = support[b] = 1;
  }
  auto has = [&](int a, int b) { return in[static_cast<std::size_t>(a) * n + b] != 0; };
  for (int a = 0; a < n; ++a)
    if (support[a] && !has(a, a)) fail(ErrorKind::NotAParabolic, "not reflexive at " + std::to_string(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (has(a, b) && !has(b, a))
        fail(ErrorKind::NotAParabolic, "not symmetric at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!has(a, b)) continue;
      for (int c = 0; c < n; ++c)
        if (has(b, c) && !has(a, c))
          fail(ErrorKind::NotAParabolic, "not transitive at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                             std::to_string(c) + ")");
    }
  // Union of cells: a cell meeting e lies inside e.
  std::vector<char> meets(x.rank(), 0), misses(x.rank(), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) (has(a, b) ? meets : misses)[x.cell(a, b)] = 1;
  for (int c = 0; c < x.rank(); ++c)
    if (meets[c] && misses[c]) fail(ErrorKind::NotAUnionOfCells, "cell " + std::to_string(c) + " is split by e");

  std::vector<std::vector<int>> classes;
  std::vector<int> class_of(n, -1);
  for (int a = 0; a < n; ++a) {
    if (!support[a] || class_of[a] >= 0) continue;
    classes.emplace_back();
    for (int b = a; b < n; ++b)
      if (has(a, b)) {
        class_of[b] = static_cast<int>(classes.size()) - 1;
        classes.back().push_back(b);
      }
  }
  const int k = static_cast<int>(classes.size());
  // A class pair is labelled by the set of cells meeting it.
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<int>& s = sig[static_cast<std::size_t>(i) * k + j];
      for (int a : classes[i])
        for (int b : classes[j]) s.push_back(x.cell(a, b));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      ids.emplace(s, 0);
    }
  int id = 0;
  for (auto& [s, v] : ids) v = id++;
  RelationPartition p;
  p.size = k;
  p.cells = id;
  p.cell_of.resize(static_cast<std::size_t>(k) * k);
  for (std::size_t i = 0; i < sig.size(); ++i) p.cell_of[i] = ids[sig[i]];
  if (classes_out) *classes_out = classes;
  return make_config(std::move(p));
}

CoherentConfiguration restrict_to(const CoherentConfiguration& x, const std::vector<int>& delta) {
  std::vector<int> pts = delta;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int k = static_cast<int>(pts.size());
  if (k == 0) fail(ErrorKind::MalformedInput, "empty restriction");
  std::vector<std::int64_t> labels(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) labels[static_cast<std::size_t>(i) * k + j] = x.cell(pts[i], pts[j]);
  // Renumber in increasing order of the original cell index.
  std::vector<std::int64_t> used(labels);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  RelationPartition p;
  p.size = k;
  p.cells = static_cast<int>(used.size());
  p.cell_of.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    p.cell_of[i] = static_cast<int>(std::lower_bound(used.begin(), used.end(), labels[i]) - used.begin());
  return make_config(std::move(p));
}

std::pair<Equivalence, Equivalence> radical_and_span(int n, const Relation& s) {
  std::vector<std::vector<char>> out(n, std::vector<char>(n, 0)), in(n, std::vector<char>(n, 0));
  std::vector<int> span_uf(n);
  std::iota(span_uf.begin(), span_uf.end(), 0);
  for (auto [a, b] : s) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::MalformedInput, "pair outside the point set");
    out[a][b] = 1;
    in[b][a] = 1;
    span_uf[find(span_uf, a)] = find(span_uf, b);
  }
  // rad(s): points with equal out-neighbourhoods and equal in-neighbourhoods.
  std::vector<int> rad_uf(n);
  std::iota(rad_uf.begin(), rad_uf.end(), 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (find(rad_uf, a) != find(rad_uf, b) && out[a] == out[b] && in[a] == in[b]) rad_uf[find(rad_uf, b)] = find(rad_uf, a);
  return {least_member_labels(rad_uf), least_member_labels(span_uf)};
}

}  // namespace wlh::cc
