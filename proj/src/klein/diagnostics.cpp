#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>

#include <Eigen/Dense>

#include "wlh/klein.hpp"

namespace wlh::klein {

namespace {

/// Maximum number of internally vertex-disjoint s-t paths (s, t non-adjacent), by unit-capacity flow
/// on the split graph: v_in = 2v, v_out = 2v + 1.
int disjoint_paths(const Graph& g, int s, int t) {
  const int N = 2 * g.n;
  std::vector<std::vector<int>> cap(N, std::vector<int>(N, 0));
  for (int v = 0; v < g.n; ++v) cap[2 * v][2 * v + 1] = (v == s || v == t) ? g.n : 1;
  for (auto [u, w] : g.edges) {
    cap[2 * u + 1][2 * w] = g.n;
    cap[2 * w + 1][2 * u] = g.n;
  }
  const int src = 2 * s + 1, dst = 2 * t;
  int flow = 0;
  for (;;) {
    std::vector<int> prev(N, -1);
    prev[src] = src;
    std::queue<int> q;
    q.push(src);
    while (!q.empty() && prev[dst] < 0) {
      int v = q.front();
      q.pop();
      for (int w = 0; w < N; ++w)
        if (prev[w] < 0 && cap[v][w] > 0) prev[w] = v, q.push(w);
    }
    if (prev[dst] < 0) return flow;
    for (int v = dst; v != src; v = prev[v]) --cap[prev[v]][v], ++cap[v][prev[v]];
    ++flow;
  }
}

using Bits = std::uint64_t;

bool components_small(const std::vector<Bits>& nbr, int n, Bits removed) {
  Bits left = ((n == 64) ? ~Bits{0} : ((Bits{1} << n) - 1)) & ~removed;
  while (left) {
    Bits comp = left & (~left + 1), frontier = comp;
    while (frontier) {
      Bits next = 0;
      for (Bits f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
      next &= left & ~comp;
      comp |= next;
      frontier = next;
    }
    if (2 * std::popcount(comp) > n) return false;
    left &= ~comp;
  }
  return true;
}

std::vector<Bits> neighbour_masks(const Graph& g) {
  if (g.n > 63) fail(ErrorKind::BudgetExceeded, "exhaustive subset search supports at most 63 vertices");
  std::vector<Bits> nbr(g.n, 0);
  for (auto [u, w] : g.edges) nbr[u] |= Bits{1} << w, nbr[w] |= Bits{1} << u;
  return nbr;
}

}  // namespace

int vertex_connectivity(const Graph& g) {
  const auto adj = g.adjacency();
  int best = g.n - 1;  // complete graphs
  for (int s = 0; s < g.n; ++s)
    for (int t = s + 1; t < g.n; ++t)
      if (!std::binary_search(adj[s].begin(), adj[s].end(), t)) best = std::min(best, disjoint_paths(g, s, t));
  return std::max(best, 0);
}

int min_separator_size(const Graph& g) {
  const auto nbr = neighbour_masks(g);
  const int n = g.n;
  for (int s = 0; s <= n; ++s) {
    // Subsets of size s in increasing (Gosper) order.
    if (s == 0) {
      if (components_small(nbr, n, 0)) return 0;
      continue;
    }
    Bits set = (Bits{1} << s) - 1;
    const Bits limit = Bits{1} << n;
    while (set < limit) {
      if (components_small(nbr, n, set)) return s;
      const Bits c = set & (~set + 1), r = set + c;
      set = (((r ^ set) >> 2) / c) | r;
    }
  }
  return n;
}

std::vector<double> eigenvalues(const Graph& g) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.n, g.n);
  for (auto [u, w] : g.edges) m(u, w) = m(w, u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + g.n);
  std::sort(out.rbegin(), out.rend());
  return out;
}

Expansion expansion(const Graph& g, int exact_limit) {
  Expansion e;
  if (g.n <= 1) return e;
  if (g.n <= exact_limit) {
    const auto nbr = neighbour_masks(g);
    long best_num = -1, best_den = 1;
    for (Bits d = 1; d < (Bits{1} << g.n); ++d) {
      const int size = std::popcount(d);
      if (2 * size > g.n) continue;
      Bits out = 0;
      for (Bits f = d; f; f &= f - 1) out |= nbr[std::countr_zero(f)];
      const long b = std::popcount(out & ~d);
      if (best_num < 0 || b * best_den < best_num * size) best_num = b, best_den = size;
    }
    const long q = std::gcd(best_num, best_den);
    e.num = best_num / q, e.den = best_den / q;
    return e;
  }
  // Edge expansion is at least (d - lambda_2) / 2 and each boundary vertex absorbs at most d edges.
  const auto ev = eigenvalues(g);
  const auto adj = g.adjacency();
  std::size_t d = 0;
  for (const auto& l : adj) d = std::max(d, l.size());
  e.exact = false;
  e.bound = d ? (static_cast<double>(d) - ev[1]) / (2.0 * static_cast<double>(d)) : 0.0;
  return e;
}

int separator_bound(const Expansion& eps, int a) {
  if (eps.exact) {
    // floor(2a num / (4 den + num)) + 1
    return static_cast<int>((2L * a * eps.num) / (4L * eps.den + eps.num)) + 1;
  }
  const double c = eps.bound / (4.0 + eps.bound);
  return static_cast<int>(std::floor(c * 2.0 * a)) + 1;
}

Diagnostics graph_diagnostics(const Graph& g) {
  Diagnostics d;
  d.vertices = g.n;
  d.edges = static_cast<int>(g.edges.size());
  const auto comps = components(g);
  d.component_count = static_cast<int>(comps.size());
  d.components_connected = comps.size() <= 1;
  d.vertex_connectivity = d.components_connected ? vertex_connectivity(g) : 0;
  d.min_separator_size = min_separator_size(g);
  d.eigenvalues = eigenvalues(g);
  d.epsilon = expansion(g);
  d.k = separator_bound(d.epsilon, g.n);
  return d;
}

}  // namespace wlh::klein
