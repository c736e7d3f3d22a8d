#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "wlh/construction.hpp"
#include "wlh/wldim.hpp"

using namespace wlh;
using wldim::Structure;

namespace {

const std::vector<int> kGraphPhi{0, 1, 2};

Structure disjoint_triangles() { return wldim::from_graph(klein::make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})); }

std::vector<int> identity(int n) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

}  // namespace

TEST_CASE("pair classes of 2-WL") {
  const auto c5 = wldim::wl_m(wldim::from_graph(klein::cycle_graph(5)), 2);
  CHECK(wldim::pair_partition(c5).cells == 3);
  const auto p = wldim::wl_m(wldim::from_graph(klein::petersen()), 2, 1000);
  CHECK(wldim::pair_partition(p).cells == 3);
  CHECK(oracle::thrown_kind([] { wldim::wl_m(wldim::from_graph(klein::petersen()), 3, 999); }) ==
        ErrorKind::BudgetExceeded);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const auto g = oracle::random_graph(n, 0.4, rng);
    const auto c = wldim::wl_m(wldim::from_graph(g), 2);
    CHECK(oracle::same_blocks(oracle::labels(wldim::pair_partition(c)),
                              oracle::naive_closure(n, {oracle::edge_relation(g)})));
  }
}

TEST_CASE("projections") {
  const auto c = wldim::wl_m(wldim::from_graph(klein::cycle_graph(6)), 2);
  const auto points = wldim::projection(c, 1);
  CHECK(points.size() == 6);
  CHECK(std::all_of(points.begin(), points.end(), [&](int v) { return v == points.front(); }));
  // A path separates its ends from its middle.
  const auto path = wldim::wl_m(wldim::from_graph(klein::make_graph(3, {{0, 1}, {1, 2}})), 2);
  const auto ends = wldim::projection(path, 1);
  CHECK(ends[0] == ends[2]);
  CHECK(ends[0] != ends[1]);
}

TEST_CASE("equivalence tests") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const auto g = oracle::random_graph(n, 0.5, rng);
    auto perm = identity(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto x = wldim::from_graph(g);
    const auto y = wldim::from_graph(oracle::relabel(g, perm));
    for (int m = 1; m <= 2; ++m) {
      CHECK(wldim::wl_m_equivalent(x, x, kGraphPhi, m).equivalent);
      CHECK(wldim::wl_m_equivalent(x, y, kGraphPhi, m).equivalent);
      CHECK(wldim::wl_m(x, m).classes() == wldim::wl_m(y, m).classes());
    }
  }

  const auto c6 = wldim::from_graph(klein::cycle_graph(6));
  CHECK(wldim::wl_m_equivalent(c6, disjoint_triangles(), kGraphPhi, 1).equivalent);
  const auto two = wldim::wl_m_equivalent(c6, disjoint_triangles(), kGraphPhi, 2);
  CHECK_FALSE(two.equivalent);
  CHECK_FALSE(two.reason.empty());

  const auto c5 = wldim::from_graph(klein::cycle_graph(5));
  CHECK_FALSE(wldim::wl_m_equivalent(c5, c6, kGraphPhi, 1).equivalent);
  const auto colors = wldim::from_pair_colors(2, {0, 1, 1, 0});
  const auto three = wldim::from_pair_colors(2, {0, 1, 2, 0});
  CHECK_FALSE(wldim::wl_m_equivalent(colors, three, {0, 1}, 1).equivalent);
  CHECK(oracle::thrown_kind([] { wldim::from_pair_colors(2, {0, 1, 1}); }) == ErrorKind::MalformedInput);

  // Cayley structures take the residue path and agree with their dense form.
  const auto a = sring::cyclotomic(13, {3});
  const auto cayley = wldim::from_sring(a);
  const auto dense = wldim::from_config(sring::cayley_scheme(a));
  CHECK(cayley.is_cayley());
  const auto r = wldim::wl_m_equivalent(cayley, cayley, identity(a.rank()), 2);
  CHECK(r.equivalent);
  CHECK(wldim::wl_m(cayley, 2).classes() == wldim::wl_m(dense, 2).classes());
}

TEST_CASE("pebble game against the set-choice game") {
  int pairs = 0;
  for (int n = 2; n <= 5; ++n) {
    const auto graphs = oracle::all_graphs(n);
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = i; j < graphs.size(); ++j) {
        const auto x = wldim::from_graph(graphs[i]);
        const auto y = wldim::from_graph(graphs[j]);
        for (int pebbles = 2; pebbles <= (n <= 4 ? 3 : 2); ++pebbles) {
          const bool oracle_wins = oracle::subset_game_duplicator_wins(x, y, kGraphPhi, pebbles);
          const auto game = wldim::pebble_game(x, y, kGraphPhi, pebbles);
          CHECK((game.winner == wldim::Winner::Duplicator) == oracle_wins);
          CHECK(wldim::wl_m_equivalent(x, y, kGraphPhi, pebbles - 1).equivalent == oracle_wins);
          ++pairs;
        }
      }
  }
  CHECK(pairs > 100);

  const auto c6 = wldim::from_graph(klein::cycle_graph(6));
  CHECK(wldim::pebble_game(c6, disjoint_triangles(), kGraphPhi, 2).winner == wldim::Winner::Duplicator);
  CHECK(wldim::pebble_game(c6, disjoint_triangles(), kGraphPhi, 3).winner == wldim::Winner::Spoiler);
  // Initial pebbles: adjacent against non-adjacent loses at once.
  const auto start = wldim::pebble_game(c6, c6, kGraphPhi, 2, {0, 1}, {0, 3});
  CHECK(start.winner == wldim::Winner::Spoiler);
  CHECK(start.decided_at_start);
  CHECK(wldim::pebble_game(c6, c6, kGraphPhi, 2, {0}, {0, 1}).winner == wldim::Winner::Spoiler);

  CHECK(oracle::thrown_kind([&] { wldim::pebble_game(c6, wldim::from_graph(klein::cycle_graph(5)), kGraphPhi, 2); }) ==
        ErrorKind::DegreeMismatch);
  CHECK(oracle::thrown_kind([] {
          const auto p = wldim::from_graph(klein::petersen());
          wldim::pebble_game(p, p, kGraphPhi, 2, {}, {}, 8);
        }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("Duplicator strategy with the identity system") {
  const auto a = sring::cyclotomic(35, {6});
  const auto a0 = sring::coset_closure(a);
  wldim::DuplicatorOptions opts;
  opts.samples = 0;
  opts.m = 1;
  const auto r = wldim::run_duplicator(a, a0, identity(a.rank()), wldim::identity_system(a0), opts);
  CHECK(r.ok());
  CHECK(r.theta_identity);
  CHECK(r.tuples == 35);
  CHECK(r.points_checked == 35 * 35);
}

TEST_CASE("scripted Duplicator on b1") {
  const auto inst = construction::build_instance(construction::preset("b1-5005"));
  const auto sys = construction::build_local_multiplier_system(inst, 9);
  wldim::DuplicatorOptions opts;
  opts.samples = 40;
  opts.seed = 7;
  const auto r = wldim::scripted_duplicator(inst, sys, opts);
  CHECK(r.ok());
  CHECK(r.violations == 0);
  CHECK(r.tuples == 40);

  const auto bad = wldim::scripted_duplicator(inst, sys, opts, sring::Section{5005, 1});
  CHECK(bad.violations > 0);
  CHECK(bad.first_violation.has_value());

  const auto low = construction::build_local_multiplier_system(inst, 1);
  CHECK(oracle::thrown_kind([&] { wldim::scripted_duplicator(inst, low, opts); }) == ErrorKind::BadParams);
}
