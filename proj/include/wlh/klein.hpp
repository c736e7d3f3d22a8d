#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlh/cc.hpp"
#include "wlh/gf2.hpp"

namespace wlh::klein {

// ---- graphs -----------------------------------------------------------------

/// Simple undirected graph on 0..n-1; edges stored with u < w in input order.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
  /// Index of edge {u, w} or -1.
  int edge_index(int u, int w) const;
  bool operator==(const Graph&) const = default;
};

/// Validates endpoints, loops and duplicates; MalformedInput otherwise.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

/// Parts are the first and second halves of the vertex range, every vertex has degree 3.
bool is_cubic_bipartite(const Graph& g);

/// Presets in the part convention u_1..u_b = 0..b-1, w_1..w_b = b..2b-1.
Graph single_edge();
Graph k33();
Graph cube_q3();
Graph heawood();
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph petersen();
/// Vertex (v, c) is v + c n; (u, 0) ~ (w, 1) and (u, 1) ~ (w, 0) for every edge uw.
Graph double_cover(const Graph& g);
/// Connected components as vertex lists ordered by least member.
std::vector<std::vector<int>> components(const Graph& g);
/// Some isomorphism g -> h as a vertex map, by degree-pruned backtracking.
std::optional<std::vector<int>> find_graph_isomorphism(const Graph& g, const Graph& h);

/// Three disjoint matchings indexed by k = 1, 2, 3 (matching[k - 1]); entries are edge indices.
struct OneFactorization {
  std::array<std::vector<int>, 3> matching;
  /// k per edge.
  std::vector<int> k_of_edge(const Graph& g) const;
};

/// Repeated maximum bipartite matching. With require_cubic the input must be cubic bipartite
/// (MalformedInput otherwise) and every matching must be perfect (NoPerfectMatching otherwise).
OneFactorization one_factorization(const Graph& g, bool require_cubic = true);

// ---- the Klein configuration ------------------------------------------------

/// Homomorphism K -> Z_2 with kernel {0, k}; K = {0, 1, 2, 3} under xor.
int rho(int k, int x);

/// Points are 4 v + x for vertex v and Klein element x.
struct KleinConfig {
  Graph graph;
  std::vector<int> k_of_edge;
  cc::CoherentConfiguration x;

  int a() const { return graph.n; }
  static int point(int v, int x) { return 4 * v + x; }
  /// Cells between the fibers of edge e in the direction u -> w (u < w) and back.
  struct EdgeCells {
    int agree_uw, disagree_uw, agree_wu, disagree_wu;
  };
  EdgeCells edge_cells(int e) const;
};

/// Explicit partition: translation cells within fibers, rho-agreement split across edges,
/// one full cell across non-adjacent fibers; validated by make_config.
KleinConfig klein_config(const Graph& g, const OneFactorization& f);

/// Number of cells predicted by the construction rules.
int expected_cell_count(const Graph& g);

/// Swap of the two cross cells of edge e in both directions; NotAnEdge for an out-of-range index.
cc::CellMap psi(const KleinConfig& k, int e);
/// Same for a vertex pair; NotAnEdge unless uw is an edge.
cc::CellMap psi(const KleinConfig& k, int u, int w);

/// Klein tuples as bit vectors: bit 2v is bit 0 of f_v and bit 2v + 1 is bit 1.
gf2::BitVec tuple_bits(const std::vector<int>& f);
std::vector<int> bits_tuple(const gf2::BitVec& b, int a);

/// rho-agreement equations over every edge with both ends in the vertex mask;
/// edge twisted (or -1) gets right-hand side 1.
gf2::AffineSystem edge_system(const KleinConfig& k, int twisted, const std::vector<char>& in_set);
/// Basis of Aut(X) inside K_V.
std::vector<gf2::BitVec> aut_basis(const KleinConfig& k);
/// Elements of Aut(X) restricted to the given vertices, as sorted tuples over those vertices.
std::vector<std::vector<int>> aut_projection(const KleinConfig& k, const std::vector<int>& vertices);
/// Some f in K_V with f in iso(X, psi_e), when one exists.
std::optional<std::vector<int>> global_twisted_iso(const KleinConfig& k, int e);
/// Lexicographically least pair (x_u, x_w) outside the projection of Aut(X) to the fibers of e.
std::pair<int, int> least_non_member(const KleinConfig& k, int e);
/// f in K_V is an isomorphism of X onto itself inducing phi on cells (checked on all pairs).
bool tuple_is_iso(const KleinConfig& k, const std::vector<int>& f, const cc::CellMap& phi);

struct KleinReport {
  int points = 0;
  int cells = 0;
  int expected_cells = 0;
  bool cells_match = false;
  bool k1 = false;
  bool k2 = false;
  bool k2_exhaustive = false;  ///< all 4^a tuples filtered rather than generators only
  bool k3 = false;
  bool k4 = false;
  bool k5 = false;
  int fiber_pairs = 0;
  std::uint64_t bijections_checked = 0;
  std::string aut_order;       ///< from the stabilizer-chain search
  int aut_dimension = 0;       ///< GF(2) dimension of Aut(X) inside K_V
  bool aut_order_agrees = false;
  /// Isomorphisms of X onto itself that move fiber 0, found by backtracking (first hit only).
  std::optional<bool> fiber_moving_iso;
  std::vector<std::string> failures;
  bool ok() const { return cells_match && k1 && k2 && k3 && k4 && k5 && aut_order_agrees; }
};

/// Brute-force check of K1-K5 on every fiber and fiber pair. The fiber-moving search runs only when
/// iso_node_budget is nonzero.
KleinReport verify_klein(const KleinConfig& k, std::uint64_t iso_node_budget = 0);

/// Bijection of the points preserving the pair partition up to a cell permutation, with pins.
std::optional<cc::Bijection> find_cell_permuting_iso(const cc::CoherentConfiguration& x,
                                                     const std::vector<std::pair<int, int>>& pins,
                                                     std::uint64_t node_budget);

// ---- local systems of isomorphisms -------------------------------------------

struct LocalIsoSystem {
  int m = 0;
  int e0 = -1;
  std::vector<std::vector<int>> sets;    ///< vertex sets of size <= m, sorted, in enumeration order
  std::vector<std::vector<int>> tuples;  ///< Klein tuple per set, identity outside it
  /// Correction h in Aut(X) per pair (i < j) with nonempty intersection and differing values there.
  std::map<std::pair<int, int>, std::vector<int>> corrections;
  std::size_t pairs_checked = 0;
};

/// Least supported tuple f with f restricted to the set in iso(X_set, psi_set), by exhaustion.
std::optional<std::vector<int>> local_iso(const KleinConfig& k, int e0, const std::vector<int>& vertices);
/// Every vertex set of size <= m; Infeasible with the witness set when some set has no tuple;
/// BudgetExceeded when the set count passes max_sets.
LocalIsoSystem local_iso_system(const KleinConfig& k, int e0, int m, std::size_t max_sets = 20000);
/// Re-checks both clauses of the local system definition on the explicit configuration.
bool check_local_iso_system(const KleinConfig& k, const LocalIsoSystem& l, std::string* why = nullptr);

// ---- diagnostics ------------------------------------------------------------

int vertex_connectivity(const Graph& g);
/// Least |S| such that every component of g - S has at most n / 2 vertices (exhaustive).
int min_separator_size(const Graph& g);
/// Adjacency eigenvalues, decreasing.
std::vector<double> eigenvalues(const Graph& g);

/// min |outer boundary(D)| / |D| over nonempty D with |D| <= n / 2, as a reduced fraction.
struct Expansion {
  long num = 0;
  long den = 1;
  bool exact = true;   ///< false when only the spectral lower bound was computed
  double bound = 0.0;  ///< the spectral lower bound when not exact
  double value() const { return exact ? static_cast<double>(num) / static_cast<double>(den) : bound; }
};
/// Exact by exhaustion for n <= exact_limit; otherwise (degree - lambda_2) / (2 degree) from the spectrum.
Expansion expansion(const Graph& g, int exact_limit = 16);
/// k = floor(c 2a) + 1 with c = eps / (4 + eps), exact in rationals.
int separator_bound(const Expansion& eps, int a);

struct Diagnostics {
  int vertices = 0;
  int edges = 0;
  int vertex_connectivity = 0;
  int min_separator_size = 0;
  std::vector<double> eigenvalues;
  Expansion epsilon;
  int k = 0;
  bool components_connected = true;
  int component_count = 0;
};
Diagnostics graph_diagnostics(const Graph& g);

/// "graph a m" header followed by m lines "u w"; ParseError.
Graph parse_edge_list(const std::string& text);
std::string format_edge_list(const Graph& g);

}  // namespace wlh::klein
