#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "wlh/multipliers.hpp"

using namespace wlh;
using mult::InnerMultiplier;
using mult::i64;
using sring::Section;

namespace {

mult::BaseShape shape_b1() { return mult::make_shape({{5, 7}, {11, 13}}); }

// Orbits of a set of multipliers acting on Z_n, counted by flood fill.
int orbit_count(int n, const std::vector<i64>& units) {
  std::vector<char> seen(n, 0);
  int orbits = 0;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ++orbits;
    std::vector<int> stack{x};
    seen[x] = 1;
    while (!stack.empty()) {
      const int y = stack.back();
      stack.pop_back();
      for (i64 u : units) {
        const int z = static_cast<int>(u * y % n);
        if (!seen[z]) seen[z] = 1, stack.push_back(z);
      }
    }
  }
  return orbits;
}

std::vector<InnerMultiplier> unit_group(const sring::SRing& a, const std::vector<i64>& units) {
  const auto s0 = sring::s0_sections(a);
  std::vector<InnerMultiplier> out;
  for (i64 u : units) out.push_back(mult::from_global_unit(s0, u));
  return out;
}

}  // namespace

TEST_CASE("Klein subgroups and mu") {
  const auto shape = shape_b1();
  CHECK(mult::klein_subgroup(shape, 0) == std::vector<i64>{1, 6, 29, 34});
  CHECK(mult::klein_subgroup(shape, 1).size() == 4);
  for (i64 k : mult::klein_subgroup(shape, 1)) CHECK(k * k % 143 == 1);
  for (int v = 0; v < 2; ++v)
    for (int k = 0; k < 4; ++k) CHECK(mult::klein_element(shape, v, mult::klein_unit(shape, v, k)) == k);
  CHECK(oracle::thrown_kind([&] { mult::klein_element(shape, 0, 2); }) == ErrorKind::NotInKleinSubgroup);

  CHECK(mult::mu_elements(shape, {0, 0}).unit == std::vector<i64>{1, 1});
  std::set<mult::VertexUnits> images;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) images.insert(mult::mu_elements(shape, {x, y}));
  CHECK(images.size() == 16);
}

TEST_CASE("vertex data determines section units") {
  const auto shape = shape_b1();
  const auto m = mult::inner_from_vertex_data(shape, {6, 1});
  // CRT by search: x = 6 mod 35 and x = 1 mod 143.
  i64 crt = 0;
  while (crt % 35 != 6 || crt % 143 != 1) ++crt;
  CHECK(mult::section_unit(shape, m, shape.pair_section(1, 1)) == crt);
  CHECK(mult::global_unit(shape, m) == crt);
  CHECK(mult::section_unit(shape, m, shape.vertex_section(0)) == 6);
  CHECK(mult::section_unit(shape, m, {0, 0}) == 0);

  const auto id = mult::inner_from_vertex_data(shape, {1, 1});
  for (const auto& s : mult::base_s0_sections(shape)) CHECK(mult::section_unit(shape, id, s) == (s.U == s.L ? 0 : 1));
  CHECK(oracle::thrown_kind([&] { mult::inner_from_vertex_data(shape, {5, 1}); }) == ErrorKind::NotAUnit);
}

TEST_CASE("base ring in prime-basis form") {
  const auto shape = mult::make_shape({{5, 7}, {11, 13}, {17, 19}, {23, 29}});
  CHECK(shape.b() == 2);
  CHECK(mult::mask_order_string(shape, shape.g_u(2)) == std::to_string(35 * 143));
  CHECK(mult::mask_order_string(shape, shape.g_w(1)) == "323");
  CHECK(mult::mask_order_string(shape, shape.g(2, 1)) == std::to_string(5005 * 323));
  // Every S0 section lies below some pair section.
  for (const auto& s : mult::base_s0_sections(shape)) CHECK_FALSE(mult::covering_pairs(shape, s).empty());
  CHECK(oracle::thrown_kind([] { mult::make_shape({{5, 7}, {5, 11}}); }) == ErrorKind::BadParams);
  CHECK(oracle::thrown_kind([] { mult::make_shape({{3, 7}, {11, 13}}); }) == ErrorKind::BadParams);
  CHECK(oracle::thrown_kind([] { mult::make_shape({{5, 7}}); }) == ErrorKind::BadParams);
}

TEST_CASE("inner multipliers and coherence") {
  const auto a = sring::wreath_sring(sring::group_ring(5), sring::group_ring(7));
  const auto s0 = sring::s0_sections(a);
  CHECK(mult::check_inner(a, mult::identity_multiplier(s0)).sections == s0.size());
  CHECK(mult::check_inner(a, mult::from_global_unit(s0, 2)).sections == s0.size());

  // The two principal sections of the wreath are unrelated, so independent units stay coherent.
  auto independent = mult::identity_multiplier(s0);
  independent.units[Section{5, 1}] = 2;
  independent.units[Section{35, 5}] = 3;
  CHECK_NOTHROW(mult::check_inner(a, independent));

  // Equivalent sections must carry equal units: Z_35 group ring, 35/5 and 7/1 are equivalent.
  const auto g = sring::group_ring(35);
  auto m = mult::identity_multiplier(sring::s0_sections(g));
  m.units[Section{7, 1}] = 2;
  CHECK(oracle::thrown_kind([&] { mult::check_inner(g, m); }) == ErrorKind::CoherenceViolation);
  // Restriction: 35/1 with unit 2 reduces to 2 on 5/1, which still carries 1.
  auto r = mult::identity_multiplier(sring::s0_sections(g));
  r.units[Section{35, 1}] = 2;
  CHECK(oracle::thrown_kind([&] { mult::check_inner(g, r); }) == ErrorKind::CoherenceViolation);

  const auto x = mult::from_global_unit(s0, 2);
  CHECK(mult::compose(x, mult::inverse(x)) == mult::identity_multiplier(s0));
}

TEST_CASE("outer multipliers") {
  const auto a = sring::group_ring(35);
  const auto s0 = sring::s0_sections(a);
  mult::OuterMultiplier c;
  for (const auto& s : s0) c.cosets[s] = mult::section_automorphism_units(a, s);
  CHECK(mult::check_outer(a, c).sections == s0.size());

  // Cyclotomic ring: cosets of the automorphism units; a wrong coset on 7/1 breaks equivalence with 35/5.
  const auto b = sring::cyclotomic(35, {6});
  const auto t0 = sring::s0_sections(b);
  mult::OuterMultiplier d;
  for (const auto& s : t0) d.cosets[s] = mult::section_automorphism_units(b, s);
  CHECK_NOTHROW(mult::check_outer(b, d));
  REQUIRE(d.cosets.count(Section{7, 1}));
  auto shifted = d;
  std::vector<i64> coset;
  for (i64 u : d.cosets[Section{7, 1}]) coset.push_back(u * 3 % 7);
  std::sort(coset.begin(), coset.end());
  shifted.cosets[Section{7, 1}] = coset;
  CHECK(oracle::thrown_kind([&] { mult::check_outer(b, shifted); }) == ErrorKind::CoherenceViolation);
}

TEST_CASE("algebraic fusion") {
  const auto z7 = sring::group_ring(7);
  CHECK(mult::algebraic_fusion(z7, unit_group(z7, {1, 2, 4})) == sring::cyclotomic(7, {2}));
  CHECK(mult::algebraic_fusion(z7, unit_group(z7, {1})) == z7);

  const auto z35 = sring::group_ring(35);
  const std::vector<i64> k{1, 6, 29, 34};
  CHECK(mult::algebraic_fusion(z35, unit_group(z35, k)).rank() == orbit_count(35, k));
  CHECK(oracle::thrown_kind([&] { mult::algebraic_fusion(z7, unit_group(z7, {1, 2})); }) == ErrorKind::NotAGroup);
  CHECK(oracle::thrown_kind([&] {
          const auto c = sring::cyclotomic(7, {6});
          mult::algebraic_fusion(c, unit_group(c, {1}));
        }) == ErrorKind::NotACosetSRing);
}

TEST_CASE("realization of inner multipliers") {
  const auto z35 = sring::group_ring(35);
  const auto s0 = sring::s0_sections(z35);
  const auto id = mult::realize_inner_multiplier(z35, mult::identity_multiplier(s0));
  std::vector<int> identity(35);
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(id == identity);

  const auto six = mult::from_global_unit(s0, 6);
  const auto f = mult::realize_inner_multiplier(z35, six);
  for (int x = 0; x < 35; ++x) CHECK(f[x] == 6 * x % 35);
  CHECK(mult::realizes(z35, six, f));
  CHECK(mult::is_scheme_isomorphism(z35, f, [] {
    std::vector<int> phi(35);
    for (int x = 0; x < 35; ++x) phi[x] = 6 * x % 35;
    return phi;
  }()));

  // Wreath: unit 2 on the quotient C_7, unit 1 below.
  const auto w = sring::wreath_sring(sring::group_ring(5), sring::group_ring(7));
  InnerMultiplier m;
  for (const auto& s : sring::s0_sections(w)) m.units[s] = s.order() == 1 ? 0 : (s.L % 5 == 0 ? 2 : 1);
  CHECK_NOTHROW(mult::check_inner(w, m));
  const auto g = mult::realize_inner_multiplier(w, m);
  std::string why;
  CHECK(mult::realizes(w, m, g, &why));
  CHECK(why.empty());
  CHECK(mult::decompose(w).kind == mult::Decomposition::Kind::Wreath);
  CHECK(mult::decompose(z35).kind != mult::Decomposition::Kind::Wreath);
  // The realization maps each coset block onto a block: fibres of x mod 7 go to fibres of 2x mod 7.
  for (int x = 0; x < 35; ++x) CHECK(g[x] % 7 == 2 * x % 7);
}
