#include <algorithm>
#include <functional>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "wlh/klein.hpp"

namespace wlh::klein {

int rho(int k, int x) {
  switch (k) {
    case 1: return (x >> 1) & 1;
    case 2: return x & 1;
    case 3: return (x ^ (x >> 1)) & 1;
    default: fail(ErrorKind::MalformedInput, "matching index must be 1, 2 or 3");
  }
}

int expected_cell_count(const Graph& g) {
  const int a = g.n, e = static_cast<int>(g.edges.size());
  return 4 * a + 4 * e + (a * (a - 1) - 2 * e);
}

KleinConfig klein_config(const Graph& g, const OneFactorization& f) {
  KleinConfig k;
  k.graph = g;
  k.k_of_edge = f.k_of_edge(g);
  const int a = g.n, n = 4 * a;
  const std::int64_t E = static_cast<std::int64_t>(g.edges.size());
  std::vector<int> edge_at(static_cast<std::size_t>(a) * a, -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, w] = g.edges[e];
    if (k.k_of_edge[e] < 1) fail(ErrorKind::MalformedInput, "edge without a matching index");
    edge_at[u * a + w] = edge_at[w * a + u] = static_cast<int>(e);
  }
  std::vector<std::int64_t> labels(static_cast<std::size_t>(n) * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int v = p / 4, w = q / 4, x = p % 4, y = q % 4;
      std::int64_t label;
      if (v == w) {
        label = 4 * v + (x ^ y);
      } else if (int e = edge_at[v * a + w]; e >= 0) {
        const int kk = k.k_of_edge[e];
        const int dir = v < w ? 0 : 1;
        label = 4 * a + 4 * e + 2 * dir + (rho(kk, x) == rho(kk, y) ? 0 : 1);
      } else {
        label = 4 * a + 4 * E + static_cast<std::int64_t>(v) * a + w;
      }
      labels[static_cast<std::size_t>(p) * n + q] = label;
    }
  k.x = cc::make_config(cc::RelationPartition::from_labels(n, labels));
  return k;
}

KleinConfig::EdgeCells KleinConfig::edge_cells(int e) const {
  if (e < 0 || e >= static_cast<int>(graph.edges.size())) fail(ErrorKind::NotAnEdge, "edge index out of range");
  auto [u, w] = graph.edges[e];
  if (u > w) std::swap(u, w);
  int y = 1;
  while (rho(k_of_edge[e], y) == 0) ++y;
  return EdgeCells{x.cell(point(u, 0), point(w, 0)), x.cell(point(u, 0), point(w, y)),
                   x.cell(point(w, 0), point(u, 0)), x.cell(point(w, 0), point(u, y))};
}

cc::CellMap psi(const KleinConfig& k, int e) {
  const auto c = k.edge_cells(e);
  cc::CellMap phi(k.x.rank());
  for (int i = 0; i < k.x.rank(); ++i) phi[i] = i;
  std::swap(phi[c.agree_uw], phi[c.disagree_uw]);
  std::swap(phi[c.agree_wu], phi[c.disagree_wu]);
  return phi;
}

cc::CellMap psi(const KleinConfig& k, int u, int w) {
  const int e = k.graph.edge_index(u, w);
  if (e < 0) fail(ErrorKind::NotAnEdge, std::to_string(u) + " and " + std::to_string(w) + " are not adjacent");
  return psi(k, e);
}

gf2::BitVec tuple_bits(const std::vector<int>& f) {
  gf2::BitVec b(2 * static_cast<int>(f.size()));
  for (std::size_t v = 0; v < f.size(); ++v) {
    b.set(2 * v, f[v] & 1);
    b.set(2 * v + 1, f[v] & 2);
  }
  return b;
}

std::vector<int> bits_tuple(const gf2::BitVec& b, int a) {
  std::vector<int> f(a);
  for (int v = 0; v < a; ++v) f[v] = (b.get(2 * v) ? 1 : 0) | (b.get(2 * v + 1) ? 2 : 0);
  return f;
}

gf2::AffineSystem edge_system(const KleinConfig& k, int twisted, const std::vector<char>& in_set) {
  const int a = k.a();
  gf2::AffineSystem sys(2 * a);
  for (std::size_t e = 0; e < k.graph.edges.size(); ++e) {
    auto [u, w] = k.graph.edges[e];
    if (!in_set[u] || !in_set[w]) continue;
    gf2::BitVec row(2 * a);
    const int kk = k.k_of_edge[e];
    // rho_k is the linear form picking bit 1, bit 0, or their sum.
    for (int v : {u, w}) {
      if (kk == 1 || kk == 3) row.flip(2 * v + 1);
      if (kk == 2 || kk == 3) row.flip(2 * v);
    }
    sys.add_equation(row, static_cast<int>(e) == twisted);
  }
  return sys;
}

std::vector<gf2::BitVec> aut_basis(const KleinConfig& k) {
  return edge_system(k, -1, std::vector<char>(k.a(), 1)).kernel_basis();
}

std::vector<std::vector<int>> aut_projection(const KleinConfig& k, const std::vector<int>& vertices) {
  std::set<std::vector<int>> span{std::vector<int>(vertices.size(), 0)};
  for (const auto& b : aut_basis(k)) {
    std::vector<int> p(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
      p[i] = (b.get(2 * vertices[i]) ? 1 : 0) | (b.get(2 * vertices[i] + 1) ? 2 : 0);
    std::set<std::vector<int>> next = span;
    for (const auto& s : span) {
      auto t = s;
      for (std::size_t i = 0; i < t.size(); ++i) t[i] ^= p[i];
      next.insert(t);
    }
    span = std::move(next);
  }
  return {span.begin(), span.end()};
}

std::optional<std::vector<int>> global_twisted_iso(const KleinConfig& k, int e) {
  auto sys = edge_system(k, e, std::vector<char>(k.a(), 1));
  auto p = sys.particular();
  if (!p) return std::nullopt;
  return bits_tuple(*p, k.a());
}

std::pair<int, int> least_non_member(const KleinConfig& k, int e) {
  auto [u, w] = k.graph.edges.at(e);
  if (u > w) std::swap(u, w);
  const auto proj = aut_projection(k, {u, w});
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (!std::binary_search(proj.begin(), proj.end(), std::vector<int>{x, y})) return {x, y};
  fail(ErrorKind::Infeasible, "Aut(X) projects onto the full product on the fibers of the edge");
}

namespace {

int image(const std::vector<int>& f, int p) { return 4 * (p / 4) + ((p % 4) ^ f[p / 4]); }

/// Cell map induced by a Klein tuple on all pairs, if it is consistent and injective.
std::optional<cc::CellMap> induced_cell_map(const cc::CoherentConfiguration& x, const std::vector<int>& f) {
  const int n = x.size();
  cc::CellMap phi(x.rank(), -1), inv(x.rank(), -1);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int c = x.cell(p, q), d = x.cell(image(f, p), image(f, q));
      if (phi[c] < 0 && inv[d] < 0) phi[c] = d, inv[d] = c;
      else if (phi[c] != d || inv[d] != c) return std::nullopt;
    }
  return phi;
}

/// Automorphisms of the restriction of x to the given points, as point permutations, by exhaustion.
std::vector<std::vector<int>> restricted_automorphisms(const cc::CoherentConfiguration& x, const std::vector<int>& pts,
                                                       std::uint64_t& checked) {
  const int m = static_cast<int>(pts.size());
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  std::vector<std::vector<int>> out;
  do {
    ++checked;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      for (int j = 0; j < m && ok; ++j) ok = x.cell(pts[i], pts[j]) == x.cell(pts[perm[i]], pts[perm[j]]);
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// The permutations of the 4 |vertices| local points given by Klein tuples in the list.
std::set<std::vector<int>> tuple_perms(const std::vector<std::vector<int>>& tuples) {
  std::set<std::vector<int>> out;
  for (const auto& t : tuples) {
    std::vector<int> perm;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (int x = 0; x < 4; ++x) perm.push_back(static_cast<int>(4 * i) + (x ^ t[i]));
    out.insert(perm);
  }
  return out;
}

}  // namespace

bool tuple_is_iso(const KleinConfig& k, const std::vector<int>& f, const cc::CellMap& phi) {
  const int n = k.x.size();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (k.x.cell(image(f, p), image(f, q)) != phi[k.x.cell(p, q)]) return false;
  return true;
}

std::optional<cc::Bijection> find_cell_permuting_iso(const cc::CoherentConfiguration& x,
                                                     const std::vector<std::pair<int, int>>& pins,
                                                     std::uint64_t node_budget) {
  const int n = x.size();
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  for (auto [p, t] : pins) order.push_back(p), placed[p] = 1;
  for (int p = 0; p < n; ++p)
    if (!placed[p]) order.push_back(p);
  std::vector<int> forced(n, -1);
  for (auto [p, t] : pins) forced[p] = t;

  std::vector<int> f(n, -1), phi(x.rank(), -1), inv(x.rank(), -1);
  std::vector<char> used(n, 0);
  std::vector<int> trail;
  std::uint64_t nodes = 0;

  auto bind = [&](int c, int d) {
    if (phi[c] == d && inv[d] == c) return true;
    if (phi[c] >= 0 || inv[d] >= 0) return false;
    phi[c] = d, inv[d] = c;
    trail.push_back(c);
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t depth) {
    if (depth == order.size()) return true;
    const int p = order[depth];
    for (int t = 0; t < n; ++t) {
      if (used[t] || (forced[p] >= 0 && forced[p] != t)) continue;
      if (++nodes > node_budget) fail(ErrorKind::BudgetExceeded, "cell-permuting isomorphism search budget exhausted");
      const std::size_t mark = trail.size();
      f[p] = t;
      bool ok = bind(x.cell(p, p), x.cell(t, t));
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const int q = order[i];
        ok = bind(x.cell(p, q), x.cell(t, f[q])) && bind(x.cell(q, p), x.cell(f[q], t));
      }
      if (ok) {
        used[t] = 1;
        if (go(depth + 1)) return true;
        used[t] = 0;
      }
      while (trail.size() > mark) {
        const int c = trail.back();
        trail.pop_back();
        inv[phi[c]] = -1, phi[c] = -1;
      }
      f[p] = -1;
    }
    return false;
  };
  if (go(0)) return f;
  return std::nullopt;
}

KleinReport verify_klein(const KleinConfig& k, std::uint64_t iso_node_budget) {
  KleinReport r;
  const int a = k.a();
  const auto& x = k.x;
  r.points = x.size();
  r.cells = x.rank();
  r.expected_cells = expected_cell_count(k.graph);
  r.cells_match = r.cells == r.expected_cells;
  if (!r.cells_match) r.failures.push_back("cell count differs from the construction rules");

  const auto adj = k.graph.adjacency();
  auto edge_k = [&](int u, int w) {
    const int e = k.graph.edge_index(u, w);
    return e < 0 ? 0 : k.k_of_edge[e];
  };

  // K1: fibers are the Omega_v and Aut acts on each as the translations of K.
  r.k1 = static_cast<int>(x.fibers().size()) == a;
  for (int v = 0; v < a && r.k1; ++v) {
    const std::vector<int> pts{4 * v, 4 * v + 1, 4 * v + 2, 4 * v + 3};
    r.k1 = x.fibers()[x.fiber_of(4 * v)] == pts;
    std::uint64_t dummy = 0;
    const auto local = restricted_automorphisms(x, pts, dummy);
    const auto proj = aut_projection(k, {v});
    r.k1 = r.k1 && local.size() == 4 && proj.size() == 4 &&
           std::set<std::vector<int>>(local.begin(), local.end()) == tuple_perms(proj);
  }
  if (!r.k1) r.failures.push_back("K1 fails");

  // K3 and K4 on every fiber pair, both for the restriction and for the projection of Aut(X).
  r.k3 = r.k4 = true;
  for (int v = 0; v < a; ++v)
    for (int w = v + 1; w < a; ++w) {
      ++r.fiber_pairs;
      std::vector<int> pts;
      for (int u : {v, w})
        for (int t = 0; t < 4; ++t) pts.push_back(4 * u + t);
      const int kk = edge_k(v, w);
      std::vector<std::vector<int>> expect;
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          if (kk == 0 || rho(kk, s) == rho(kk, t)) expect.push_back({s, t});
      const auto want = tuple_perms(expect);
      const auto local = restricted_automorphisms(x, pts, r.bijections_checked);
      const auto proj = aut_projection(k, {v, w});
      const bool ok = std::set<std::vector<int>>(local.begin(), local.end()) == want && tuple_perms(proj) == want;
      if (!ok) {
        (kk ? r.k4 : r.k3) = false;
        r.failures.push_back(std::string(kk ? "K4" : "K3") + " fails on fibers " + std::to_string(v) + "," +
                             std::to_string(w));
      }
    }

  // K2: every Klein tuple is an isomorphism of X onto itself.
  r.k2 = true;
  r.k2_exhaustive = 2 * a <= 20;
  if (r.k2_exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << (2 * a);
    for (std::uint64_t code = 0; code < total && r.k2; ++code) {
      std::vector<int> f(a);
      for (int v = 0; v < a; ++v) f[v] = static_cast<int>((code >> (2 * v)) & 3);
      r.k2 = induced_cell_map(x, f).has_value();
    }
  } else {
    // Isomorphisms compose, so the single-fiber generators suffice.
    for (int v = 0; v < a && r.k2; ++v)
      for (int t : {1, 2}) {
        std::vector<int> f(a, 0);
        f[v] = t;
        r.k2 = r.k2 && induced_cell_map(x, f).has_value();
      }
  }
  if (!r.k2) r.failures.push_back("K2 fails: a Klein tuple does not map cells to cells");

  // K5: every edge swap is an algebraic automorphism.
  r.k5 = true;
  for (std::size_t e = 0; e < k.graph.edges.size(); ++e)
    if (!cc::is_algebraic_iso(x, x, psi(k, static_cast<int>(e)))) {
      r.k5 = false;
      r.failures.push_back("K5 fails on edge " + std::to_string(e));
    }

  const auto aut = cc::automorphism_group(x);
  r.aut_order = aut.order_string();
  r.aut_dimension = static_cast<int>(aut_basis(k).size());
  r.aut_order_agrees = (boost::multiprecision::cpp_int(1) << r.aut_dimension).str() == r.aut_order;
  if (!r.aut_order_agrees) r.failures.push_back("|Aut(X)| = " + r.aut_order + " differs from 2^dim");

  if (iso_node_budget > 0) {
    try {
      bool found = false;
      for (int v = 1; v < a && !found; ++v) found = find_cell_permuting_iso(x, {{0, 4 * v}}, iso_node_budget).has_value();
      r.fiber_moving_iso = found;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
  }
  return r;
}

// ---- local systems --------------------------------------------------------------

namespace {

bool restricted_iso_ok(const KleinConfig& k, const cc::CellMap& phi, const std::vector<int>& vertices,
                       const std::vector<int>& f) {
  std::vector<int> pts;
  for (int v : vertices)
    for (int t = 0; t < 4; ++t) pts.push_back(4 * v + t);
  for (int p : pts)
    for (int q : pts)
      if (k.x.cell(image(f, p), image(f, q)) != phi[k.x.cell(p, q)]) return false;
  return true;
}

cc::CellMap twist_map(const KleinConfig& k, int e0) {
  if (e0 < 0) {
    cc::CellMap id(k.x.rank());
    for (int i = 0; i < k.x.rank(); ++i) id[i] = i;
    return id;
  }
  return psi(k, e0);
}

}  // namespace

std::optional<std::vector<int>> local_iso(const KleinConfig& k, int e0, const std::vector<int>& vertices) {
  const auto phi = twist_map(k, e0);
  const int m = static_cast<int>(vertices.size());
  std::vector<int> f(k.a(), 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * m)); ++code) {
    // The most significant digit belongs to the first vertex, so codes run in lexicographic order.
    for (int i = 0; i < m; ++i) f[vertices[i]] = static_cast<int>((code >> (2 * (m - 1 - i))) & 3);
    if (restricted_iso_ok(k, phi, vertices, f)) return f;
  }
  return std::nullopt;
}

LocalIsoSystem local_iso_system(const KleinConfig& k, int e0, int m, std::size_t max_sets) {
  const int a = k.a();
  if (m < 1) fail(ErrorKind::BadParams, "locality must be at least 1");
  m = std::min(m, a);
  LocalIsoSystem l;
  l.m = m, l.e0 = e0;
  // Sets by size, then lexicographically.
  for (int s = 1; s <= m; ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      l.sets.push_back(idx);
      if (l.sets.size() > max_sets) fail(ErrorKind::BudgetExceeded, "too many vertex sets for the locality bound");
      int i = s - 1;
      while (i >= 0 && idx[i] == a - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  for (const auto& set : l.sets) {
    auto f = local_iso(k, e0, set);
    if (!f) {
      std::string w;
      for (int v : set) w += (w.empty() ? "" : ",") + std::to_string(v);
      fail(ErrorKind::Infeasible, "no local isomorphism on the fibers of {" + w + "}");
    }
    l.tuples.push_back(*f);
  }

  const auto base = edge_system(k, -1, std::vector<char>(a, 1));
  std::map<std::vector<int>, std::vector<int>> cache;  // (vertex, value) list -> correction
  for (std::size_t i = 0; i < l.sets.size(); ++i)
    for (std::size_t j = i + 1; j < l.sets.size(); ++j) {
      ++l.pairs_checked;
      std::vector<int> key;
      std::vector<int> common;
      std::set_intersection(l.sets[i].begin(), l.sets[i].end(), l.sets[j].begin(), l.sets[j].end(),
                            std::back_inserter(common));
      bool differs = false;
      for (int v : common) {
        const int d = l.tuples[i][v] ^ l.tuples[j][v];
        key.push_back(v), key.push_back(d);
        differs = differs || d != 0;
      }
      if (!differs) continue;
      auto it = cache.find(key);
      if (it == cache.end()) {
        auto sys = base;
        for (std::size_t t = 0; t < key.size(); t += 2) {
          for (int bit = 0; bit < 2; ++bit) {
            gf2::BitVec row(2 * a);
            row.set(2 * key[t] + bit, true);
            sys.add_equation(row, (key[t + 1] >> bit) & 1);
          }
        }
        auto p = sys.particular();
        if (!p) fail(ErrorKind::Infeasible, "local isomorphisms differ outside Aut(X) on a common set");
        it = cache.emplace(key, bits_tuple(*p, a)).first;
      }
      l.corrections[{static_cast<int>(i), static_cast<int>(j)}] = it->second;
    }
  return l;
}

bool check_local_iso_system(const KleinConfig& k, const LocalIsoSystem& l, std::string* why) {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const auto phi = twist_map(k, l.e0);
  const auto base = edge_system(k, -1, std::vector<char>(k.a(), 1));
  for (std::size_t i = 0; i < l.sets.size(); ++i) {
    const auto& f = l.tuples[i];
    for (int v = 0; v < k.a(); ++v)
      if (f[v] != 0 && !std::binary_search(l.sets[i].begin(), l.sets[i].end(), v))
        return bad("tuple " + std::to_string(i) + " is not supported on its set");
    if (!restricted_iso_ok(k, phi, l.sets[i], f)) return bad("tuple " + std::to_string(i) + " is not a local isomorphism");
  }
  for (std::size_t i = 0; i < l.sets.size(); ++i)
    for (std::size_t j = i + 1; j < l.sets.size(); ++j) {
      auto it = l.corrections.find({static_cast<int>(i), static_cast<int>(j)});
      std::vector<int> h(k.a(), 0);
      if (it != l.corrections.end()) {
        h = it->second;
        if (!base.satisfies(tuple_bits(h))) return bad("correction is not in Aut(X)");
      }
      for (int v : l.sets[i])
        if (std::binary_search(l.sets[j].begin(), l.sets[j].end(), v) && (l.tuples[i][v] ^ l.tuples[j][v]) != h[v])
          return bad("correction does not match on the common fibers of sets " + std::to_string(i) + "," +
                     std::to_string(j));
    }
  return true;
}

}  // namespace wlh::klein
