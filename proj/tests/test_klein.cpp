#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wlh/klein.hpp"

using namespace wlh;
using klein::Graph;

namespace {

klein::KleinConfig config_of(const Graph& g) {
  return klein::klein_config(g, klein::one_factorization(g, klein::is_cubic_bipartite(g)));
}

void check_factorization(const Graph& g, const klein::OneFactorization& f, std::size_t size) {
  std::vector<int> used(g.edges.size(), 0);
  for (const auto& m : f.matching) {
    CHECK(m.size() == size);
    std::vector<int> touched(g.n, 0);
    for (int e : m) {
      ++used[e];
      ++touched[g.edges[e].first];
      ++touched[g.edges[e].second];
    }
    for (int t : touched) CHECK(t == 1);
  }
  for (int u : used) CHECK(u == 1);
}

// min |N(D) \ D| / |D| over nonempty D with |D| <= n / 2, by exhaustion.
std::pair<long, long> brute_expansion(const Graph& g) {
  const auto adj = g.adjacency();
  long best_num = g.n, best_den = 1;
  for (std::uint32_t d = 1; d < (1u << g.n); ++d) {
    const int size = __builtin_popcount(d);
    if (2 * size > g.n) continue;
    std::uint32_t boundary = 0;
    for (int v = 0; v < g.n; ++v)
      if (d >> v & 1)
        for (int w : adj[v]) boundary |= 1u << w;
    boundary &= ~d;
    const long num = __builtin_popcount(boundary);
    if (num * best_den < best_num * size) best_num = num, best_den = size;
  }
  const long g0 = std::gcd(best_num, best_den);
  return {best_num / g0, best_den / g0};
}

}  // namespace

TEST_CASE("one-factorizations") {
  const auto k = klein::k33();
  check_factorization(k, klein::one_factorization(k), 3);
  const auto q = klein::cube_q3();
  check_factorization(q, klein::one_factorization(q), 4);
  check_factorization(klein::heawood(), klein::one_factorization(klein::heawood()), 7);
  CHECK(oracle::thrown_kind([] { klein::one_factorization(klein::cycle_graph(6)); }) == ErrorKind::MalformedInput);
  CHECK(oracle::thrown_kind([] { klein::one_factorization(klein::complete_graph(4)); }) == ErrorKind::MalformedInput);
}

TEST_CASE("Klein configuration cell counts") {
  const auto k = config_of(klein::k33());
  CHECK(k.x.size() == 24);
  CHECK(k.x.rank() == 72);  // 6 * 4 within fibers, 18 * 2 across edges, 12 * 1 across non-edges
  CHECK(klein::expected_cell_count(klein::k33()) == 72);

  const auto e = config_of(klein::single_edge());
  CHECK(e.x.size() == 8);
  CHECK(e.x.rank() == 12);

  const auto h = config_of(klein::heawood());
  CHECK(h.x.size() == 56);
  CHECK(h.x.rank() == klein::expected_cell_count(klein::heawood()));
  // Re-validation from the bare partition.
  CHECK(make_config(h.x.partition()).rank() == h.x.rank());
}

TEST_CASE("psi is an involutive algebraic automorphism on edges only") {
  const auto k = config_of(klein::k33());
  for (int e = 0; e < static_cast<int>(k.graph.edges.size()); ++e) {
    const auto p = klein::psi(k, e);
    CHECK(cc::is_algebraic_iso(k.x, k.x, p));
    for (int s = 0; s < k.x.rank(); ++s) CHECK(p[p[s]] == s);
    CHECK(p != [&] {
      cc::CellMap id(k.x.rank());
      std::iota(id.begin(), id.end(), 0);
      return id;
    }());
  }
  CHECK(oracle::thrown_kind([&] { klein::psi(k, 0, 1); }) == ErrorKind::NotAnEdge);
  CHECK(oracle::thrown_kind([&] { klein::psi(k, 99); }) == ErrorKind::NotAnEdge);
}

TEST_CASE("K1-K5 by brute force") {
  for (const auto& g : {klein::single_edge(), klein::k33(), klein::cube_q3()}) {
    const auto r = klein::verify_klein(config_of(g));
    CHECK(r.ok());
    CHECK(r.failures.empty());
  }
}

TEST_CASE("automorphisms inside K_V") {
  const auto k = config_of(klein::k33());
  // The basis spans the whole automorphism group found by search.
  const auto basis = klein::aut_basis(k);
  CHECK(basis.size() == 4);
  CHECK(cc::automorphism_group(k.x).order_string() == "16");
  cc::CellMap id(k.x.rank());
  std::iota(id.begin(), id.end(), 0);
  for (const auto& b : basis) CHECK(klein::tuple_is_iso(k, klein::bits_tuple(b, 6), id));
  // No global tuple realizes the twist on a graph with large separators.
  CHECK_FALSE(klein::global_twisted_iso(k, 0).has_value());
  // The single edge has no separator obstruction.
  CHECK(klein::global_twisted_iso(config_of(klein::single_edge()), 0).has_value());
}

TEST_CASE("local systems of isomorphisms") {
  const auto k = config_of(klein::k33());
  const auto l = klein::local_iso_system(k, 0, 1);
  CHECK(l.sets.size() == 6);
  CHECK(klein::check_local_iso_system(k, l));
  CHECK(oracle::thrown_kind([&] { klein::local_iso_system(k, 0, 6); }) == ErrorKind::Infeasible);

  const auto untwisted = klein::local_iso_system(k, -1, 2);
  for (const auto& t : untwisted.tuples) CHECK(t == std::vector<int>(6, 0));
  CHECK(untwisted.corrections.empty());
}

TEST_CASE("graph diagnostics") {
  const auto d = klein::graph_diagnostics(klein::k33());
  const std::vector<double> want{3, 0, 0, 0, 0, -3};
  REQUIRE(d.eigenvalues.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(d.eigenvalues[i] - want[i]) < 1e-9);
  CHECK(d.vertex_connectivity == 3);
  CHECK(d.epsilon.exact);
  CHECK(d.epsilon.num == 1);
  CHECK(d.epsilon.den == 1);

  for (const auto& g : {klein::k33(), klein::cube_q3(), klein::petersen(), klein::cycle_graph(7)}) {
    const auto eps = klein::expansion(g);
    const auto [num, den] = brute_expansion(g);
    CHECK(eps.num == num);
    CHECK(eps.den == den);
    CHECK(klein::min_separator_size(g) == oracle::brute_min_separator(g));
  }
  // Spectral fallback is flagged.
  const auto h = klein::expansion(klein::heawood(), 8);
  CHECK_FALSE(h.exact);
  CHECK(h.bound > 0);
}

TEST_CASE("double covers") {
  const auto cover = klein::double_cover(klein::complete_graph(4));
  const auto f = klein::find_graph_isomorphism(cover, klein::cube_q3());
  REQUIRE(f.has_value());
  std::set<std::pair<int, int>> q3;
  for (auto [u, w] : klein::cube_q3().edges) q3.insert({std::min(u, w), std::max(u, w)});
  for (auto [u, w] : cover.edges) CHECK(q3.count({std::min((*f)[u], (*f)[w]), std::max((*f)[u], (*f)[w])}));
  CHECK(klein::components(klein::double_cover(klein::k33())).size() == 2);
  CHECK(klein::components(klein::double_cover(klein::petersen())).size() == 1);
}

TEST_CASE("separator bound from certified expansion") {
  for (int b = 3; b <= 5; ++b)
    for (const auto& g : oracle::cubic_bipartite_graphs(b)) {
      const int k = klein::separator_bound(klein::expansion(g), g.n);
      // Every separator has at least k vertices, and on these graphs exactly k are needed.
      CHECK(oracle::brute_min_separator(g) == k);
    }
}

TEST_CASE("edge list parsing") {
  const auto g = klein::parse_edge_list("graph 4 3\n0 1\n1 2\n2 3\n");
  CHECK(g.n == 4);
  CHECK(g.edges.size() == 3);
  CHECK(klein::parse_edge_list(klein::format_edge_list(klein::heawood())) == klein::heawood());
  for (const char* bad : {"", "graph x 1\n", "graph 3 2\n0 1\n", "graph 3 1\n0 5\n", "graph 3 2\n0 1\n1 0\n"})
    CHECK(oracle::thrown_kind([&] { klein::parse_edge_list(bad); }).has_value());
}
