// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wlh/construction.hpp"
#include "wlh/klein.hpp"
#include "wlh/wldim.hpp"

using namespace wlh;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// CC1-CC3 by direct counting over all triples.
bool brute_coherent(const cc::RelationPartition& p) {
  const int n = p.size;
  std::vector<int> diagonal(p.cells, -1), transpose(p.cells, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int c = p.at(a, b);
      if (diagonal[c] == -1) diagonal[c] = a == b;
      if (diagonal[c] != (a == b)) return false;
      if (transpose[c] == -1) transpose[c] = p.at(b, a);
      if (transpose[c] != p.at(b, a)) return false;
    }
  std::vector<std::vector<std::pair<int, int>>> profile(p.cells);
  std::vector<char> seen(p.cells, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<std::pair<int, int>> walks;
      for (int g = 0; g < n; ++g) walks.emplace_back(p.at(a, g), p.at(g, b));
      std::sort(walks.begin(), walks.end());
      const int c = p.at(a, b);
      if (!seen[c]) seen[c] = 1, profile[c] = std::move(walks);
      else if (profile[c] != walks) return false;
    }
  return true;
}

const construction::HardInstance& b1() {
  static const auto inst = construction::build_instance(construction::preset("b1-5005"));
  return inst;
}

// ---- criteria ------------------------------------------------------------------------

void closure_oracle(Outcome& o) {
  std::mt19937_64 rng(20240901);
  double closure_time = 0;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial * 126 / 199;
    const double p = 0.05 + 0.55 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto g = oracle::random_graph(n, p, rng);
    const auto rel = oracle::edge_relation(g);
    const auto t = std::chrono::steady_clock::now();
    const auto got = cc::closure_partition(n, {rel});
    closure_time += seconds_since(t);
    o.require(oracle::same_blocks(oracle::labels(got), oracle::naive_closure(n, {rel})),
              "graph " + std::to_string(trial) + " on " + std::to_string(n) + " points");
    ++checked;
  }
  o.detail << checked << " random graphs up to 128 points match the cubic reference; closure time " << closure_time
           << " s";
}

void axiom_suites(Outcome& o) {
  std::vector<std::pair<std::string, cc::CoherentConfiguration>> configs;
  for (int n = 1; n <= 12; ++n) {
    configs.emplace_back("regular " + std::to_string(n), cc::regular_cyclic(n));
    configs.emplace_back("trivial " + std::to_string(n), cc::trivial(n));
    configs.emplace_back("discrete " + std::to_string(n), cc::discrete(n));
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const int n = 4 + i;
    configs.emplace_back("closure " + std::to_string(i),
                         cc::coherent_closure(n, {oracle::edge_relation(oracle::random_graph(n, 0.35, rng))}));
  }
  const std::vector<cc::CoherentConfiguration> factors{cc::regular_cyclic(2), cc::regular_cyclic(3), cc::trivial(3),
                                                       cc::coherent_closure(5, {oracle::edge_relation(klein::cycle_graph(5))})};
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < factors.size(); ++j) {
      configs.emplace_back("tensor", cc::tensor(factors[i], factors[j]));
      const auto w = cc::wreath(factors[i], factors[j]);
      configs.emplace_back("wreath", w);
      const int inner = factors[i].size();
      cc::Relation blocks;
      for (int a = 0; a < w.size(); ++a)
        for (int b = 0; b < w.size(); ++b)
          if (a / inner == b / inner) blocks.emplace_back(a, b);
      configs.emplace_back("quotient", cc::quotient(w, blocks));
    }
  configs.emplace_back("restriction", cc::restrict_to(cc::tensor(cc::discrete(3), cc::regular_cyclic(4)), {4, 5, 6, 7}));
  for (const auto& g : {klein::single_edge(), klein::k33(), klein::cube_q3(), klein::heawood()})
    configs.emplace_back("klein", klein::klein_config(g, klein::one_factorization(g, klein::is_cubic_bipartite(g))).x);

  std::vector<std::pair<std::string, sring::SRing>> rings;
  for (int n = 1; n <= 40; ++n)
    for (const auto& m : oracle::unit_subgroups(n)) rings.emplace_back("cyclotomic " + std::to_string(n), sring::cyclotomic(n, m));
  const auto p5 = sring::cyclotomic(5, {4});
  rings.emplace_back("tensor", sring::tensor_sring(p5, sring::cyclotomic(7, {2})));
  rings.emplace_back("wreath", sring::wreath_sring(p5, sring::group_ring(7)));
  rings.emplace_back("wreath", sring::wreath_sring(sring::group_ring(3), p5));
  rings.emplace_back("coset closure", sring::coset_closure(sring::cyclotomic(36, {5})));
  rings.emplace_back("wl closure", sring::wl_closure_set(30, {1, 2, 29}));
  rings.emplace_back("restriction", sring::restrict_sring(sring::wreath_sring(p5, sring::group_ring(7)), {35, 5}));
  for (int n = 2; n <= 40; ++n) {
    const auto g = sring::group_ring(n);
    std::vector<mult::InnerMultiplier> group;
    for (int u = 1; u < n; ++u)
      if (std::gcd(u, n) == 1 && (u * u) % n == 1) group.push_back(mult::from_global_unit(sring::s0_sections(g), u));
    if (n == 2 || group.size() == 2) rings.emplace_back("fusion", mult::algebraic_fusion(g, group));
  }

  int cc_checked = 0, ring_checked = 0;
  for (const auto& [name, x] : configs) {
    const bool lib = !oracle::thrown_kind([&] { cc::make_config(x.partition()); }).has_value();
    o.require(lib && brute_coherent(x.partition()), name);
    ++cc_checked;
  }
  for (const auto& [name, a] : rings) {
    const bool lib = !oracle::thrown_kind([&] { sring::sring_from_partition(a.n, a.classes); }).has_value();
    o.require(lib && oracle::is_sring_partition(a.n, a.class_of), name);
    ++ring_checked;
  }
  // The fused ring of the flagship instance is too large for the counting oracle.
  const auto& fused = b1().ex->fused;
  o.require(!oracle::thrown_kind([&] { sring::sring_from_partition(fused.n, fused.classes); }).has_value(), "A* of b1");
  ++ring_checked;
  o.detail << cc_checked << " configurations pass CC1-CC3 (library and triple count), " << ring_checked
           << " S-rings pass S1-S3";
}

void binary_property(Outcome& o) {
  int checked = 0;
  std::uint64_t tuples = 0;
  auto check = [&](const std::string& name, const cc::CoherentConfiguration& x) {
    const auto r = cc::is_binary(x, 3);
    o.require(r.binary, name);
    tuples += r.tuples_checked;
    ++checked;
  };
  for (int n = 1; n <= 12; ++n) check("regular " + std::to_string(n), cc::regular_cyclic(n));
  for (int a = 2; a <= 18; ++a)
    for (int b = 2; a * b <= 36; ++b) {
      for (const auto& [x, y] : {std::pair{cc::regular_cyclic(a), cc::regular_cyclic(b)},
                                 std::pair{cc::regular_cyclic(a), cc::trivial(b)},
                                 std::pair{cc::trivial(a), cc::regular_cyclic(b)}}) {
        check("tensor " + std::to_string(a) + "x" + std::to_string(b), cc::tensor(x, y));
        check("wreath " + std::to_string(a) + "x" + std::to_string(b), cc::wreath(x, y));
      }
    }
  o.detail << checked << " schemes binary at m_max = 3, " << tuples << " tuples";
}

void cyclotomic_property(Outcome& o) {
  std::uint64_t powers = 0, extractions = 0, violations = 0, rings = 0;
  for (int n = 2; n <= 200; ++n) {
    std::vector<int> primes;
    for (int p = 2; p <= n; ++p) {
      bool prime = true;
      for (int d = 2; d * d <= p; ++d) prime = prime && p % d;
      if (prime && n % p == 0) primes.push_back(p);
    }
    for (const auto& m : oracle::unit_subgroups(n)) {
      const auto a = sring::cyclotomic(n, m);
      ++rings;
      for (const auto& x : a.classes) {
        for (int u = 1; u < n; ++u) {
          if (std::gcd(u, n) != 1) continue;
          const auto y = sring::sw_power(n, x, u);
          if (a.basic_set_of(y.front()) != y) ++violations;
          ++powers;
        }
        for (int p : primes) {
          if (!sring::is_a_set(a, sring::sw_extract(n, x, p))) ++violations;
          ++extractions;
        }
      }
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << rings << " cyclotomic rings, " << powers << " powers, " << extractions << " extractions, " << violations
           << " violations";
}

void klein_gadget(Outcome& o) {
  std::uint64_t bijections = 0;
  int psi_checked = 0;
  for (const auto& [name, g] : {std::pair{"K33", klein::k33()}, {"Q3", klein::cube_q3()}, {"Heawood", klein::heawood()}}) {
    const auto k = klein::klein_config(g, klein::one_factorization(g));
    o.require(brute_coherent(k.x.partition()), std::string(name) + " coherence");
    const auto r = klein::verify_klein(k);
    o.require(r.ok() && r.k3 && r.k4, std::string(name) + " K1-K5");
    bijections += r.bijections_checked;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      o.require(cc::is_algebraic_iso(k.x, k.x, klein::psi(k, e)), std::string(name) + " psi");
      ++psi_checked;
    }
  }
  o.detail << "K33, Q3, Heawood coherent and K1-K5 hold; " << bijections << " fiber bijections; " << psi_checked
           << " edge twists preserve intersection numbers";
}

void flagship_identity(Outcome& o) {
  const auto w = construction::verify_wl_identity(b1());
  o.require(w.direct_equal, "closure of X* differs from A*");
  o.require(w.coeff_formula && w.coeff_distinct, "coefficient replay");
  o.require(w.ok(), "certificate");
  o.detail << "closure rank " << w.closure_rank << " = rank(A*) " << w.fused_rank << " after " << w.rounds
           << " rounds; extraction chains end in " << w.chain_u.lands_in << " and " << w.chain_w.lands_in
           << "; coefficients";
  for (auto c : w.coeff_u) o.detail << ' ' << c;
  o.detail << " /";
  for (auto c : w.coeff_w) o.detail << ' ' << c;
}

void wl_non_refutation(Outcome& o) {
  const auto& inst = b1();
  const auto x = wldim::from_sring(inst.ex->fused);
  const auto eq = wldim::wl_m_equivalent(x, x, inst.ex->phi, 2);
  o.require(eq.equivalent, "wl_m_equivalent: " + eq.reason);
  const auto sys = construction::build_local_multiplier_system(inst, 9);
  wldim::DuplicatorOptions opts;
  opts.m = 2;
  opts.samples = 1000;
  opts.seed = 2024;
  const auto r = wldim::scripted_duplicator(inst, sys, opts);
  o.require(r.tuples >= 1000, "fewer than 1000 tuples");
  o.require(r.ok(), r.first_violation.value_or("theta not bijective"));
  o.detail << "2-WL equivalent under phi_c after " << eq.rounds << " rounds; Duplicator checked " << r.tuples
           << " tuples, " << r.points_checked << " moves, " << r.violations << " violations";
}

void iso_controls(Outcome& o) {
  const auto pos = construction::verify_no_iso(b1());
  o.require(!pos.empty() && pos.realized == std::optional<bool>(true), "a = 2 has no realized isomorphism");
  const auto k33 = construction::build_instance(construction::preset("k33"));
  const auto neg = construction::verify_no_iso(k33);
  o.require(neg.candidates == 4096, "K33 candidate count");
  o.require(neg.agrees, "search and GF(2) count disagree");
  o.detail << "a = 2: " << pos.survivors << " of " << pos.candidates << " candidates survive, realized; K33: "
           << neg.survivors << " of " << neg.candidates << " survive, GF(2) system "
           << (neg.gf2_consistent ? "consistent" : "inconsistent");
}

void game_logic(Outcome& o) {
  const std::vector<int> phi{0, 1, 2};
  int pairs = 0, disagreements = 0;
  auto compare = [&](const klein::Graph& g, const klein::Graph& h, int m) {
    const auto x = wldim::from_graph(g), y = wldim::from_graph(h);
    const bool game = wldim::pebble_game(x, y, phi, m + 1).winner == wldim::Winner::Duplicator;
    const bool wl = wldim::wl_m_equivalent(x, y, phi, m).equivalent;
    disagreements += game != wl;
    ++pairs;
  };
  for (int n = 1; n <= 5; ++n) {
    const auto graphs = oracle::all_graphs(n);
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = i; j < graphs.size(); ++j)
        for (int m = 1; m <= 2; ++m) compare(graphs[i], graphs[j], m);
  }
  // Regular pairs on 6 to 10 points that color refinement cannot separate.
  auto cycles = [](std::vector<int> lengths) {
    std::vector<std::pair<int, int>> e;
    int base = 0;
    for (int l : lengths) {
      for (int i = 0; i < l; ++i) e.emplace_back(base + i, base + (i + 1) % l);
      base += l;
    }
    for (auto& [u, w] : e)
      if (u > w) std::swap(u, w);
    return klein::make_graph(base, e);
  };
  auto prism = [](int k, bool twisted) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) {
      e.emplace_back(i, k + i);
      if (i + 1 < k) e.emplace_back(i, i + 1), e.emplace_back(k + i, k + i + 1);
    }
    if (twisted) e.emplace_back(0, 2 * k - 1), e.emplace_back(k - 1, k);
    else e.emplace_back(0, k - 1), e.emplace_back(k, 2 * k - 1);
    return klein::make_graph(2 * k, e);
  };
  const std::vector<std::pair<klein::Graph, klein::Graph>> hard{
      {cycles({6}), cycles({3, 3})},         {cycles({8}), cycles({4, 4})},   {cycles({8}), cycles({3, 5})},
      {cycles({9}), cycles({3, 3, 3})},      {cycles({10}), cycles({5, 5})},  {cycles({10}), cycles({4, 6})},
      {prism(3, false), klein::k33()},       {prism(4, false), prism(4, true)}, {prism(5, false), prism(5, true)},
      {klein::petersen(), prism(5, false)},  {klein::petersen(), prism(5, true)}, {klein::cube_q3(), prism(4, true)}};
  for (const auto& [g, h] : hard)
    for (int m = 1; m <= 2; ++m) compare(g, h, m);
  o.require(pairs >= 50, "fewer than 50 pairs");
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.detail << pairs << " structure pairs with at most 10 points, m = 1 and 2, " << disagreements << " disagreements";
}

void size_audit(Outcome& o) {
  for (const auto& name : construction::preset_names()) {
    if (name != construction::preset_names().front()) o.detail << "; ";
    const auto inst = construction::build_instance(construction::preset(name));
    const auto a = construction::size_audit(inst);
    o.require(a.rows == inst.x_star.size() && a.literal_matches + a.discrepancies.size() == a.rows,
              name + " audit incomplete");
    o.detail << name << ": " << a.rows << " rows, " << a.literal_matches << " match the literal table, "
             << a.shifted_matches << " the shifted one, " << a.discrepancies.size() << " discrepancies";
  }
}

void expander_tooling(Outcome& o) {
  const auto d = klein::graph_diagnostics(klein::k33());
  const std::vector<double> want{3, 0, 0, 0, 0, -3};
  bool spectrum = d.eigenvalues.size() == want.size();
  for (std::size_t i = 0; spectrum && i < want.size(); ++i) spectrum = std::abs(d.eigenvalues[i] - want[i]) < 1e-9;
  o.require(spectrum, "K33 spectrum");

  const auto cover = klein::double_cover(klein::complete_graph(4));
  const auto q3 = klein::cube_q3();
  const auto f = klein::find_graph_isomorphism(cover, q3);
  bool iso = f.has_value() && cover.n == q3.n && cover.edges.size() == q3.edges.size();
  if (iso) {
    std::vector<char> hit(q3.n, 0);
    for (int v : *f) {
      iso = iso && v >= 0 && v < q3.n && !hit[v];
      if (iso) hit[v] = 1;
    }
    for (auto [u, w] : cover.edges) iso = iso && q3.edge_index((*f)[u], (*f)[w]) >= 0;
  }
  o.require(iso, "double cover of K4 is not Q3");

  int graphs = 0, mismatches = 0;
  std::map<int, std::set<int>> ks;
  for (int b = 3; b <= 6; ++b)
    for (const auto& g : oracle::cubic_bipartite_graphs(b)) {
      const int k = klein::separator_bound(klein::expansion(g), g.n);
      const int sep = oracle::brute_min_separator(g);
      mismatches += k != sep;
      ks[g.n].insert(k);
      ++graphs;
    }
  o.require(mismatches == 0, std::to_string(mismatches) + " separator mismatches");
  o.detail << "K33 spectrum to 1e-9; double cover of K4 maps edge for edge onto Q3; " << graphs
           << " cubic bipartite graphs with a <= 12 have k equal to the exhaustive minimum separator (k values";
  for (const auto& [a, s] : ks) {
    o.detail << " a=" << a << ':';
    for (int k : s) o.detail << k << (k == *s.rbegin() ? "" : "/");
  }
  o.detail << ')';
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 when the criterion states none
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "closure oracle", 60, closure_oracle},
      {2, "axiom suites", 0, axiom_suites},
      {3, "binary schemes", 600, binary_property},
      {4, "powers and extractions", 0, cyclotomic_property},
      {5, "Klein gadget", 300, klein_gadget},
      {6, "flagship identity at n = 5005", 900, flagship_identity},
      {7, "2-WL non-refutation", 1800, wl_non_refutation},
      {8, "isomorphism controls", 60, iso_controls},
      {9, "game and WL agreement", 0, game_logic},
      {10, "size audit", 0, size_audit},
      {11, "expander tooling", 0, expander_tooling},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double took = seconds_since(t);
    if (c.limit > 0 && took > c.limit) {
      o.pass = false;
      o.detail << "; over the " << c.limit << " s limit";
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), took);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
