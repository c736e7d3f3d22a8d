#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "wlh/sring.hpp"

using namespace wlh;
using sring::Section;
using sring::SRing;

namespace {

using Classes = std::vector<std::vector<int>>;

std::vector<int> label_vector(const SRing& a) { return a.class_of; }

SRing paley5() { return sring::sring_from_partition(5, {{0}, {1, 4}, {2, 3}}); }

SRing wreath_5_7() { return sring::wreath_sring(sring::group_ring(5), sring::group_ring(7)); }

}  // namespace

TEST_CASE("validation of partitions") {
  const auto a = paley5();
  CHECK(a.rank() == 3);
  CHECK(sring::group_ring(9).rank() == 9);
  CHECK(oracle::thrown_kind([] { sring::sring_from_partition(5, {{0, 1}, {2, 3, 4}}); }) ==
        ErrorKind::AxiomViolation);
  CHECK(oracle::thrown_kind([] { sring::sring_from_partition(5, {{0}, {1}, {2, 3, 4}}); }) ==
        ErrorKind::AxiomViolation);
  // S2 holds, but {1, 5} + {1, 5} hits 2 and 4 once and 3 never.
  CHECK(oracle::thrown_kind([] { sring::sring_from_partition(6, {{0}, {1, 5}, {2, 3, 4}}); }) ==
        ErrorKind::AxiomViolation);
  CHECK(oracle::is_sring_partition(5, label_vector(a)));
}

TEST_CASE("Cayley scheme correspondence") {
  const auto z5 = sring::cayley_scheme(sring::group_ring(5));
  CHECK(z5.is_regular());
  CHECK(z5.rank() == 5);

  const auto x = sring::cayley_scheme(paley5());
  cc::Relation edges;
  for (int a = 0; a < 5; ++a) edges.emplace_back(a, (a + 1) % 5), edges.emplace_back(a, (a + 4) % 5);
  CHECK(oracle::same_blocks(oracle::labels(x.partition()), oracle::naive_closure(5, {edges})));

  std::mt19937_64 rng(3);
  int tested = 0;
  for (int n = 5; tested < 50; ++n) {
    const auto subgroups = oracle::unit_subgroups(n);
    const auto& m = subgroups[rng() % subgroups.size()];
    const auto a = sring::cyclotomic(n, m);
    CHECK(sring::sring_of_scheme(sring::cayley_scheme(a)) == a);
    ++tested;
  }
  CHECK(oracle::thrown_kind([] { sring::sring_of_scheme(cc::trivial(4)); }) == std::nullopt);
  CHECK(oracle::thrown_kind([] { sring::sring_of_scheme(cc::discrete(3)); }) == ErrorKind::NotCayley);
}

TEST_CASE("WL closure of residue sets") {
  CHECK(sring::wl_closure_set(5, {1, 4}) == paley5());
  CHECK(sring::wl_closure_set(7, {0}).rank() == 2);
  const auto c9 = sring::wl_closure_set(9, {3, 6});
  CHECK(c9.classes == Classes{{0}, {1, 2, 4, 5, 7, 8}, {3, 6}});
  // Against the pair-level reference closure.
  for (int n : {8, 10, 12, 15}) {
    const std::vector<int> x{1, 2, n - 1};
    cc::Relation rel;
    for (int a = 0; a < n; ++a)
      for (int d : x) rel.emplace_back(a, (a + d) % n);
    const auto ref = oracle::naive_closure(n, {rel});
    const auto got = sring::wl_closure_set(n, x);
    CHECK(oracle::same_blocks(got.class_of, std::vector<int>(ref.begin(), ref.begin() + n)));
  }
}

TEST_CASE("cyclotomic rings") {
  const auto a = sring::cyclotomic(7, {2});
  CHECK(a.classes == Classes{{0}, {1, 2, 4}, {3, 5, 6}});
  CHECK(sring::cyclotomic(12, {1}).rank() == 12);
  CHECK(sring::cyclotomic(5, {4}) == paley5());
}

TEST_CASE("Schur-Wielandt operators") {
  CHECK(sring::sw_power(7, {1, 2, 4}, 3) == std::vector<int>{3, 5, 6});
  CHECK(sring::sw_extract(9, {1, 4, 7}, 3).empty());
  CHECK(sring::sw_extract(9, {1}, 3) == std::vector<int>{3});
  CHECK(oracle::thrown_kind([] { sring::sw_power(9, {1}, 3); }) == ErrorKind::NotCoprime);
  CHECK(oracle::thrown_kind([] { sring::sw_extract(9, {1}, 2); }) == ErrorKind::NotADivisor);
}

TEST_CASE("power and extraction preserve cyclotomic rings") {
  std::size_t checks = 0;
  for (int n = 2; n <= 40; ++n)
    for (const auto& m : oracle::unit_subgroups(n)) {
      const auto a = sring::cyclotomic(n, m);
      for (const auto& x : a.classes) {
        for (int u = 1; u < n; ++u)
          if (std::gcd(u, n) == 1) {
            const auto y = sring::sw_power(n, x, u);
            CHECK(a.basic_set_of(y.front()) == y);
            ++checks;
          }
        for (int p = 2; p <= n; ++p) {
          bool prime = true;
          for (int d = 2; d * d <= p; ++d) prime = prime && p % d;
          if (!prime || n % p) continue;
          CHECK(sring::is_a_set(a, sring::sw_extract(n, x, p)));
          ++checks;
        }
      }
    }
  CHECK(checks > 10000);
}

TEST_CASE("tensor and wreath rings") {
  CHECK(sring::tensor_sring(sring::group_ring(5), sring::group_ring(7)) == sring::group_ring(35));
  CHECK(wreath_5_7().rank() == 11);
  const auto t = sring::tensor_sring(paley5(), sring::cyclotomic(7, {6}));
  CHECK(t.rank() == 12);
  CHECK(sring::tensor_sring(paley5(), sring::trivial_sring(7)).rank() == 6);
  CHECK(sring::tensor_sring(paley5(), sring::cyclotomic(7, {2})).rank() == 9);
  CHECK(oracle::thrown_kind([] { sring::tensor_sring(sring::group_ring(6), sring::group_ring(4)); }) ==
        ErrorKind::NotCoprime);
  CHECK(oracle::is_sring_partition(35, wreath_5_7().class_of));
}

TEST_CASE("sections and principal sections") {
  const auto a = sring::cyclotomic(12, {11});
  CHECK(sring::principal_section(a, {4, 8}) == Section{3, 1});
  CHECK(sring::principal_section(a, {0}) == Section{1, 1});
  const auto w = wreath_5_7();
  const auto& top = w.basic_set_of(1);
  CHECK(top.size() == 5);
  CHECK(sring::principal_section(w, top) == Section{35, 5});
  CHECK(sring::a_subgroups(w) == std::vector<int>{1, 5, 35});

  // Each class is the full preimage of its projection.
  for (const auto& x : w.classes) {
    const auto s = sring::principal_section(w, x);
    std::vector<int> ys;
    for (int v : x) ys.push_back(sring::project(35, s, v));
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    CHECK(sring::preimage(35, s, ys) == x);
  }

  const auto poset = sring::sections(w);
  for (std::size_t i = 0; i < poset.sections.size(); ++i)
    for (std::size_t j = 0; j < poset.sections.size(); ++j)
      if (poset.equivalence_class[i] == poset.equivalence_class[j])
        CHECK(poset.sections[i].order() == poset.sections[j].order());
  CHECK(sring::restrict_sring(w, {35, 5}) == sring::group_ring(7));
  CHECK(oracle::thrown_kind([&] { sring::restrict_sring(w, {7, 1}); }) == ErrorKind::NotASection);
}

TEST_CASE("coset closure") {
  CHECK(sring::coset_closure(paley5()) == sring::group_ring(5));
  CHECK(sring::coset_closure(wreath_5_7()) == wreath_5_7());
  CHECK(sring::is_coset_sring(wreath_5_7()));

  // Minimality against every coset S-ring of small cyclic groups.
  for (int n = 4; n <= 9; ++n) {
    std::vector<std::vector<int>> coset_rings;
    oracle::for_each_partition(n, [&](const std::vector<int>& l) {
      if (oracle::is_coset_partition(n, l) && oracle::is_sring_partition(n, l)) coset_rings.push_back(l);
    });
    for (const auto& m : oracle::unit_subgroups(n)) {
      const auto a = sring::cyclotomic(n, m);
      const auto a0 = sring::coset_closure(a);
      CHECK(oracle::is_coset_partition(n, a0.class_of));
      CHECK(oracle::finer(a0.class_of, a.class_of));
      for (const auto& b : coset_rings)
        if (oracle::finer(b, a.class_of)) CHECK(oracle::finer(b, a0.class_of));
      CHECK(sring::coset_closure(a0) == a0);
    }
  }
}

TEST_CASE("automorphisms and normality") {
  CHECK(sring::automorphism_group(sring::cyclotomic(7, {2})).order_string() == "21");
  CHECK(sring::automorphism_group(paley5()).order_string() == "10");
  CHECK(sring::is_normal(sring::group_ring(7)));
  CHECK(sring::normalized_isos(sring::group_ring(7), sring::group_ring(7), [] {
          std::vector<int> id(7);
          std::iota(id.begin(), id.end(), 0);
          return id;
        }()).size() == 1);

  const auto prime = sring::classify_normality(sring::cyclotomic(7, {2}));
  CHECK(prime.is_normal == true);
  CHECK(prime.is_totally_normal == true);

  const auto w = wreath_5_7();
  CHECK_FALSE(sring::is_normal(w));
  CHECK(sring::automorphism_group(w).order_string() == "546875");  // 5^7 * 7
  const auto report = sring::classify_normality(w);
  CHECK(report.is_normal == false);
  CHECK(report.is_totally_normal == true);
  CHECK(sring::is_quasidense(w));

  // A-subgroups are fixed by every normalized automorphism.
  const auto a = sring::cyclotomic(12, {5});
  std::vector<int> id(a.rank());
  std::iota(id.begin(), id.end(), 0);
  for (const auto& f : sring::normalized_isos(a, a, id))
    for (int d : sring::a_subgroups(a))
      for (int x = 0; x < 12; x += 12 / d) CHECK(f[x] % (12 / d) == 0);
}
