#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wlh/cc.hpp"
#include "wlh/klein.hpp"

using namespace wlh;
using cc::RelationPartition;

namespace {

RelationPartition partition_of(int n, const std::function<int(int, int)>& f) {
  std::vector<std::int64_t> labels;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) labels.push_back(f(a, b));
  return RelationPartition::from_labels(n, labels);
}

// Number of paths (alpha, gamma, beta) with (alpha, gamma) in r and (gamma, beta) in s.
std::int64_t path_count(const cc::CoherentConfiguration& x, int r, int s) {
  std::int64_t total = 0;
  for (int g = 0; g < x.size(); ++g) {
    std::int64_t in = 0, out = 0;
    for (int v = 0; v < x.size(); ++v) {
      in += x.cell(v, g) == r;
      out += x.cell(g, v) == s;
    }
    total += in * out;
  }
  return total;
}

std::int64_t cell_size(const cc::CoherentConfiguration& x, int t) {
  return std::count(x.partition().cell_of.begin(), x.partition().cell_of.end(), t);
}

void check_double_counting(const cc::CoherentConfiguration& x) {
  for (int r = 0; r < x.rank(); ++r)
    for (int s = 0; s < x.rank(); ++s) {
      std::int64_t sum = 0;
      for (int t = 0; t < x.rank(); ++t) sum += x.intersection(r, s, t) * cell_size(x, t);
      CHECK(sum == path_count(x, r, s));
    }
}

}  // namespace

TEST_CASE("make_config on small partitions") {
  const auto t = make_config(partition_of(3, [](int a, int b) { return a == b ? 0 : 1; }));
  CHECK(t.rank() == 2);
  CHECK(t.is_scheme());
  CHECK_FALSE(t.is_regular());

  const auto r = make_config(partition_of(5, [](int a, int b) { return ((b - a) % 5 + 5) % 5; }));
  CHECK(r.rank() == 5);
  CHECK(r.is_regular());
  for (int s = 0; s < 5; ++s) CHECK(r.valency(s) == 1);
  check_double_counting(r);

  // (0, 1) and (1, 0) cannot both sit in a cell whose transpose is another cell: split them.
  const auto bad = partition_of(3, [](int a, int b) { return a == b ? 0 : (a == 0 && b == 1) ? 1 : 2; });
  CHECK(oracle::thrown_kind([&] { make_config(bad); }) == ErrorKind::AxiomViolation);

  const auto cc1 = partition_of(3, [](int a, int b) { return (a == 0 && b == 0) || (a == 0 && b == 1) ? 0 : 1; });
  CHECK(oracle::thrown_kind([&] { make_config(cc1); }) == ErrorKind::AxiomViolation);
}

TEST_CASE("CC3 violation is named") {
  // Path on 4 points as one cell: end points and inner points see different counts.
  const auto p = partition_of(4, [](int a, int b) { return a == b ? 0 : std::abs(a - b) == 1 ? 1 : 2; });
  try {
    make_config(p);
    FAIL("expected a violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AxiomViolation);
    CHECK(std::string(e.what()).find("CC") != std::string::npos);
  }
}

TEST_CASE("coherent closure examples") {
  const auto c5 = cc::coherent_closure(5, {oracle::edge_relation(klein::cycle_graph(5))});
  CHECK(c5.rank() == 3);
  const auto pet = cc::coherent_closure(10, {oracle::edge_relation(klein::petersen())});
  CHECK(pet.rank() == 3);
  CHECK(cc::coherent_closure(6, {}).rank() == 2);
  CHECK(cc::coherent_closure(1, {}).rank() == 1);
}

TEST_CASE("coherent closure matches the cubic reference") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 18;
    const auto g = oracle::random_graph(n, 0.2 + 0.015 * trial, rng);
    const auto rel = oracle::edge_relation(g);
    const auto got = cc::closure_partition(n, {rel});
    CHECK(oracle::same_blocks(oracle::labels(got), oracle::naive_closure(n, {rel})));
  }
  // Directed and several generators.
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial;
    std::uniform_int_distribution<int> pt(0, n - 1);
    cc::Relation r1, r2;
    for (int i = 0; i < n; ++i) r1.emplace_back(pt(rng), pt(rng)), r2.emplace_back(pt(rng), pt(rng));
    CHECK(oracle::same_blocks(oracle::labels(cc::closure_partition(n, {r1, r2})), oracle::naive_closure(n, {r1, r2})));
  }
}

TEST_CASE("closure is idempotent, deterministic, and coarsest") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = oracle::random_graph(9 + trial, 0.35, rng);
    const auto x = cc::coherent_closure(g.n, {oracle::edge_relation(g)});
    std::vector<cc::Relation> cells;
    for (int s = 0; s < x.rank(); ++s) cells.push_back(cc::cells_to_relation(x, {s}));
    // Numbering depends on the generator list; the blocks must not.
    CHECK(oracle::same_blocks(oracle::labels(cc::coherent_closure(g.n, cells).partition()), oracle::labels(x.partition())));
    CHECK(cc::coherent_closure(g.n, {oracle::edge_relation(g)}).partition() == x.partition());
    check_double_counting(x);
  }
  // The discrete configuration contains every relation, and the closure is at most as fine.
  const auto c6 = cc::coherent_closure(6, {oracle::edge_relation(klein::cycle_graph(6))});
  CHECK(c6.rank() <= cc::discrete(6).rank());
  // A hand-built coherent refinement of the 6-cycle: the regular cyclic scheme.
  const auto reg = cc::regular_cyclic(6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int a2 = 0; a2 < 6; ++a2)
        for (int b2 = 0; b2 < 6; ++b2)
          if (reg.cell(a, b) == reg.cell(a2, b2)) CHECK(c6.cell(a, b) == c6.cell(a2, b2));
}

TEST_CASE("tensor and wreath products") {
  CHECK(cc::tensor(cc::trivial(2), cc::trivial(2)).rank() == 4);
  const auto z15 = cc::tensor(cc::regular_cyclic(3), cc::regular_cyclic(5));
  CHECK(z15.rank() == 15);
  CHECK(z15.is_regular());
  // CRT: (a, b) -> x with x = a mod 3 and x = b mod 5 maps tensor cells onto cyclic cells.
  auto crt = [](int a, int b) { return (a * 10 + b * 6) % 15; };
  const auto reg = cc::regular_cyclic(15);
  std::map<int, int> cell_map;
  for (int p = 0; p < 15; ++p)
    for (int q = 0; q < 15; ++q) {
      const int image = reg.cell(crt(p / 5, p % 5), crt(q / 5, q % 5));
      auto [it, fresh] = cell_map.emplace(z15.cell(p, q), image);
      CHECK(it->second == image);
    }
  CHECK(cell_map.size() == 15);

  const auto x = cc::coherent_closure(5, {oracle::edge_relation(klein::cycle_graph(5))});
  CHECK(cc::tensor(x, cc::trivial(1)).partition() == x.partition());

  CHECK(cc::wreath(cc::regular_cyclic(5), cc::regular_cyclic(7)).rank() == 11);
  CHECK(cc::wreath(cc::trivial(2), cc::trivial(2)).rank() == 3);
  const auto nonhomogeneous = cc::discrete(2);
  CHECK(oracle::thrown_kind([&] { cc::wreath(nonhomogeneous, cc::trivial(2)); }) == ErrorKind::NotAScheme);

  for (const auto& [a, b] : {std::pair{cc::regular_cyclic(3), cc::trivial(4)}, {x, cc::regular_cyclic(2)}}) {
    CHECK(cc::tensor(a, b).rank() == a.rank() * b.rank());
    CHECK(cc::wreath(a, b).rank() == a.rank() + b.rank() - 1);
    // Re-validation of the product partitions.
    CHECK(make_config(cc::tensor(a, b).partition()).rank() == a.rank() * b.rank());
    CHECK(make_config(cc::wreath(a, b).partition()).rank() == a.rank() + b.rank() - 1);
  }
}

TEST_CASE("quotient and restriction") {
  const auto z6 = cc::regular_cyclic(6);
  cc::Relation e;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if ((b - a + 6) % 3 == 0) e.emplace_back(a, b);
  std::vector<std::vector<int>> classes;
  const auto q = cc::quotient(z6, e, &classes);
  CHECK(q.size() == 3);
  CHECK(q.is_regular());
  CHECK(classes == std::vector<std::vector<int>>{{0, 3}, {1, 4}, {2, 5}});

  cc::Relation not_transitive{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {0, 1}, {1, 0}, {1, 2}, {2, 1}};
  CHECK(oracle::thrown_kind([&] { cc::quotient(z6, not_transitive); }) == ErrorKind::NotAParabolic);

  // Restricting a disjoint-union configuration to one copy gives the factor back.
  const auto x = cc::regular_cyclic(4);
  const auto prod = cc::tensor(cc::discrete(2), x);
  const auto copy = cc::restrict_to(prod, {0, 1, 2, 3});
  CHECK(copy.rank() == 4);
  CHECK(copy.is_regular());
}

TEST_CASE("radical and span") {
  cc::Relation diag;
  for (int a = 0; a < 5; ++a) diag.emplace_back(a, a);
  auto [rad, span] = cc::radical_and_span(5, diag);
  CHECK(rad == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(span == std::vector<int>{0, 1, 2, 3, 4});

  std::tie(rad, span) = cc::radical_and_span(5, oracle::edge_relation(klein::cycle_graph(5)));
  CHECK(rad == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(span == std::vector<int>(5, 0));

  cc::Relation blocks;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (a / 3 == b / 3) blocks.emplace_back(a, b);
  std::tie(rad, span) = cc::radical_and_span(6, blocks);
  CHECK(rad == std::vector<int>{0, 0, 0, 3, 3, 3});
  CHECK(span == rad);
}

TEST_CASE("isomorphism search") {
  const auto t4 = cc::trivial(4);
  const auto id = cc::CellMap{0, 1};
  CHECK(cc::find_combinatorial_isos(t4, t4, id).size() == 24);

  const auto z5 = cc::regular_cyclic(5);
  cc::CellMap doubling(5);
  for (int s = 0; s < 5; ++s) doubling[z5.cell(0, s)] = z5.cell(0, 2 * s % 5);
  CHECK(cc::is_algebraic_iso(z5, z5, doubling));
  const auto found = cc::find_combinatorial_isos(z5, z5, doubling);
  const cc::Bijection times2{0, 2, 4, 1, 3};
  CHECK(std::find(found.begin(), found.end(), times2) != found.end());
  CHECK(cc::is_combinatorial_iso(z5, z5, doubling, times2));
  // Regular schemes: every algebraic isomorphism is induced.
  for (const auto& phi : cc::find_algebraic_isos(z5, z5)) CHECK_FALSE(cc::find_combinatorial_isos(z5, z5, phi).empty());
  CHECK(cc::find_algebraic_isos(z5, z5).size() == 4);

  CHECK(oracle::thrown_kind([&] { cc::find_combinatorial_isos(z5, cc::regular_cyclic(6), doubling); }) ==
        ErrorKind::DegreeMismatch);
  CHECK(cc::automorphism_group(t4).order_string() == "24");
  CHECK(cc::automorphism_group(z5).order_string() == "5");
}

TEST_CASE("binary schemes") {
  CHECK(cc::is_binary(cc::regular_cyclic(6), 3).binary);
  CHECK(cc::is_binary(cc::tensor(cc::regular_cyclic(3), cc::regular_cyclic(4)), 2).binary);
  CHECK(cc::is_binary(cc::trivial(4), 2).binary);
  CHECK(oracle::thrown_kind([] { cc::is_binary(cc::regular_cyclic(30), 5, 1000); }) == ErrorKind::BudgetExceeded);
  CHECK(cc::is_binary(cc::coherent_closure(10, {oracle::edge_relation(klein::petersen())}), 2).binary);
}

TEST_CASE("structure constants survive relabeling") {
  const auto x = cc::coherent_closure(8, {oracle::edge_relation(klein::cube_q3())});
  const std::vector<int> perm{3, 7, 1, 0, 6, 2, 5, 4};
  const auto y = cc::coherent_closure(8, {oracle::edge_relation(oracle::relabel(klein::cube_q3(), perm))});
  REQUIRE(x.rank() == y.rank());
  const auto isos = cc::find_algebraic_isos(x, y);
  CHECK_FALSE(isos.empty());
  std::size_t induced = 0;
  for (const auto& phi : isos) induced += !cc::find_combinatorial_isos(x, y, phi, {true}).empty();
  CHECK(induced > 0);
}
