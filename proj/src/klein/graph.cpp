#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "wlh/klein.hpp"

namespace wlh::klein {

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, w] : edges) adj[u].push_back(w), adj[w].push_back(u);
  for (auto& l : adj) std::sort(l.begin(), l.end());
  return adj;
}

int Graph::edge_index(int u, int w) const {
  if (u > w) std::swap(u, w);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i] == std::make_pair(u, w)) return static_cast<int>(i);
  return -1;
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) fail(ErrorKind::MalformedInput, "negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto& [u, w] : edges) {
    if (u < 0 || w < 0 || u >= n || w >= n) fail(ErrorKind::MalformedInput, "edge endpoint out of range");
    if (u == w) fail(ErrorKind::MalformedInput, "loop at vertex " + std::to_string(u));
    if (u > w) std::swap(u, w);
    if (!seen.insert({u, w}).second)
      fail(ErrorKind::MalformedInput, "duplicate edge " + std::to_string(u) + " " + std::to_string(w));
  }
  return Graph{n, std::move(edges)};
}

bool is_cubic_bipartite(const Graph& g) {
  if (g.n % 2 != 0 || g.n == 0) return false;
  const int b = g.n / 2;
  for (auto [u, w] : g.edges)
    if ((u < b) == (w < b)) return false;
  for (const auto& l : g.adjacency())
    if (l.size() != 3) return false;
  return true;
}

Graph single_edge() { return make_graph(2, {{0, 1}}); }

Graph k33() {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < 3; ++u)
    for (int w = 3; w < 6; ++w) e.emplace_back(u, w);
  return make_graph(6, e);
}

Graph cube_q3() {
  // Even-parity corners become 0..3 and odd-parity corners 4..7.
  const int even[4] = {0, 3, 5, 6}, odd[4] = {1, 2, 4, 7};
  std::vector<int> id(8);
  for (int i = 0; i < 4; ++i) id[even[i]] = i, id[odd[i]] = 4 + i;
  std::vector<std::pair<int, int>> e;
  for (int x : even)
    for (int bit = 0; bit < 3; ++bit) e.emplace_back(id[x], id[x ^ (1 << bit)]);
  std::sort(e.begin(), e.end());
  return make_graph(8, e);
}

Graph heawood() {
  std::vector<std::pair<int, int>> e;
  for (int j = 0; j < 7; ++j)
    for (int d : {0, 1, 3}) e.emplace_back((j + d) % 7, 7 + j);
  std::sort(e.begin(), e.end());
  return make_graph(14, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) e.emplace_back(u, w);
  return make_graph(n, e);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  return make_graph(n, e);
}

Graph petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
    e.emplace_back(i, 5 + i);
    e.emplace_back(5 + std::min(i, (i + 2) % 5), 5 + std::max(i, (i + 2) % 5));
  }
  return make_graph(10, e);
}

Graph double_cover(const Graph& g) {
  std::vector<std::pair<int, int>> e;
  for (auto [u, w] : g.edges) {
    e.emplace_back(u, w + g.n);
    e.emplace_back(w, u + g.n);
  }
  std::sort(e.begin(), e.end());
  return make_graph(2 * g.n, e);
}

std::vector<std::vector<int>> components(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<int> comp(g.n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w : adj[v])
        if (comp[w] < 0) comp[w] = comp[s], stack.push_back(w);
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::optional<std::vector<int>> find_graph_isomorphism(const Graph& g, const Graph& h) {
  if (g.n != h.n || g.edges.size() != h.edges.size()) return std::nullopt;
  const int n = g.n;
  const auto ag = g.adjacency(), ah = h.adjacency();
  std::vector<std::vector<char>> mh(n, std::vector<char>(n, 0)), mg = mh;
  for (int v = 0; v < n; ++v) {
    for (int w : ah[v]) mh[v][w] = 1;
    for (int w : ag[v]) mg[v][w] = 1;
  }
  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> go = [&](int v) {
    if (v == n) return true;
    for (int t = 0; t < n; ++t) {
      if (used[t] || ah[t].size() != ag[v].size()) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = mg[v][u] == mh[t][f[u]];
      if (!ok) continue;
      f[v] = t, used[t] = 1;
      if (go(v + 1)) return true;
      used[t] = 0;
    }
    f[v] = -1;
    return false;
  };
  if (go(0)) return f;
  return std::nullopt;
}

std::vector<int> OneFactorization::k_of_edge(const Graph& g) const {
  std::vector<int> k(g.edges.size(), 0);
  for (int i = 0; i < 3; ++i)
    for (int e : matching[i]) k[e] = i + 1;
  return k;
}

OneFactorization one_factorization(const Graph& g, bool require_cubic) {
  if (require_cubic && !is_cubic_bipartite(g))
    fail(ErrorKind::MalformedInput, "one-factorization needs a cubic bipartite graph with parts split at n/2");
  // Two-colour the graph; the left side is colour 0.
  const auto adj = g.adjacency();
  std::vector<int> side(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (side[w] < 0) side[w] = 1 - side[v], stack.push_back(w);
        else if (side[w] == side[v]) fail(ErrorKind::MalformedInput, "graph is not bipartite");
      }
    }
  }
  std::vector<char> removed(g.edges.size(), 0);
  OneFactorization out;
  for (int round = 0; round < 3; ++round) {
    // Kuhn augmenting paths over the edges not yet used.
    std::vector<std::vector<std::pair<int, int>>> nb(g.n);  // (neighbour, edge)
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (removed[e]) continue;
      auto [u, w] = g.edges[e];
      if (side[u] != 0) std::swap(u, w);
      nb[u].emplace_back(w, static_cast<int>(e));
    }
    std::vector<int> match_edge(g.n, -1);  // right vertex -> edge
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int u) {
      for (auto [w, e] : nb[u]) {
        if (seen[w]) continue;
        seen[w] = 1;
        const int cur = match_edge[w];
        if (cur < 0) {
          match_edge[w] = e;
          return true;
        }
        const auto [a, b] = g.edges[cur];
        const int other = side[a] == 0 ? a : b;
        if (augment(other)) {
          match_edge[w] = e;
          return true;
        }
      }
      return false;
    };
    for (int u = 0; u < g.n; ++u) {
      if (side[u] != 0 || nb[u].empty()) continue;
      seen.assign(g.n, 0);
      augment(u);
    }
    std::vector<int> m;
    for (int w = 0; w < g.n; ++w)
      if (match_edge[w] >= 0) m.push_back(match_edge[w]);
    std::sort(m.begin(), m.end());
    if (require_cubic && static_cast<int>(m.size()) * 2 != g.n)
      fail(ErrorKind::NoPerfectMatching, "matching " + std::to_string(round + 1) + " is not perfect");
    for (int e : m) removed[e] = 1;
    out.matching[round] = std::move(m);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!removed[e]) fail(ErrorKind::NoPerfectMatching, "edges remain after three matchings");
  return out;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  int n = 0, m = 0;
  if (!(in >> word) || word != "graph" || !(in >> n >> m) || n < 0 || m < 0)
    fail(ErrorKind::ParseError, "edge list must start with 'graph <vertices> <edges>'");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < m; ++i) {
    int u = 0, w = 0;
    if (!(in >> u >> w)) fail(ErrorKind::ParseError, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    e.emplace_back(u, w);
  }
  if (in >> word) fail(ErrorKind::ParseError, "trailing data after the edge list");
  try {
    return make_graph(n, e);
  } catch (const Error& err) {
    fail(ErrorKind::ParseError, err.what());
  }
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.n << " " << g.edges.size() << "\n";
  for (auto [u, w] : g.edges) out << u << " " << w << "\n";
  return out.str();
}

}  // namespace wlh::klein
