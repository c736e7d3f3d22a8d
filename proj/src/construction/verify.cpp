#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <numeric>
#include <set>

#include "wlh/construction.hpp"
#include "wlh/numeric.hpp"

namespace wlh::construction {

namespace {

const ExplicitPart& need_explicit(const HardInstance& inst, const char* suite) {
  if (!inst.ex) fail(ErrorKind::SuiteNotApplicable, std::string(suite) + " needs an explicit instance, n = " + inst.n);
  return *inst.ex;
}

std::vector<int> as_int(const std::vector<i64>& v) { return {v.begin(), v.end()}; }

std::string psection_text(const mult::BaseShape& shape, const PSection& s) {
  return mult::mask_order_string(shape, s.U) + "/" + mult::mask_order_string(shape, s.L);
}

bool contains(const std::vector<i64>& sorted, i64 x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

/// Elements of x in the subgroup of order d, sorted.
std::vector<int> meet_subgroup(int n, const std::vector<int>& x, int d) {
  std::vector<int> out;
  for (int v : x)
    if (v % (n / d) == 0) out.push_back(v);
  return out;
}

ExtractionChain extract(int n, std::vector<int> x, const std::vector<i64>& primes, int order_u, int order_w) {
  ExtractionChain ch;
  ch.primes = primes;
  for (i64 p : primes) x = sring::sw_extract(n, x, static_cast<int>(p));
  ch.final_size = x.size();
  ch.generated = sring::generated_order(n, x);
  if (order_u % ch.generated == 0 && order_w % ch.generated != 0) ch.lands_in = "G_u";
  else if (order_w % ch.generated == 0 && order_u % ch.generated != 0) ch.lands_in = "G_w";
  else ch.lands_in = "neither";
  return ch;
}

/// Difference counts a_0, a_1..a_b of y against the classes X_{i,0} (or X_{0,i}).
std::vector<i64> coefficients(int n, const std::vector<int>& y, const std::vector<std::vector<int>>& rows) {
  std::vector<i64> count(n, 0);
  for (int s : y)
    for (int t : y) ++count[(s - t + n) % n];
  std::vector<i64> out{count[0]};
  for (const auto& row : rows) {
    const i64 first = count[row.front()];
    for (int v : row)
      if (count[v] != first) fail(ErrorKind::IdentityFails, "difference count is not constant on a basic set");
    out.push_back(first);
  }
  return out;
}

}  // namespace

// ---- fusion ------------------------------------------------------------------------

bool FusionCertificate::ok() const {
  return fused_rank == orbit_count && s0_equal && coset_closure_equal && non_normal.empty();
}

FusionCertificate verify_fusion(const HardInstance& inst, const Budgets& budgets) {
  const auto& ex = need_explicit(inst, "fusion");
  const int n = ex.fused.n;
  FusionCertificate cert;
  cert.fused_rank = ex.fused.rank();

  // Orbits of the global units of M on Z_n, counted without the ring machinery.
  std::vector<i64> lambdas;
  for (const auto& m : inst.m) lambdas.push_back(mult::global_unit(inst.shape, m));
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ++cert.orbit_count;
    for (i64 l : lambdas) seen[num::mulmod(l, x, n)] = 1;
  }

  cert.s0_equal = sring::s0_sections(ex.fused) == ex.s0;
  cert.coset_closure_equal = sring::coset_closure(ex.fused) == ex.base;
  for (const auto& s : ex.s0) {
    const auto restricted = sring::restrict_sring(ex.fused, s);
    const auto units = s.order() > 1 ? section_group(inst, mult::to_psection(inst.shape, s)) : std::vector<i64>{};
    if (!(restricted == sring::cyclotomic(s.order(), units)))
      fail(ErrorKind::IdentityFails, "restriction of A* to " + s.str() + " is not the cyclotomic ring of M_s");
    ++cert.restriction_checks;
    if (s.order() > budgets.normality_points) {
      ++cert.normal_undecided;
      continue;
    }
    ++cert.normal_searched;
    if (!sring::is_normal(restricted)) cert.non_normal.push_back(s.str());
  }
  cert.outer = mult::check_outer(ex.fused, ex.c);
  return cert;
}

// ---- WL identity -----------------------------------------------------------------------

bool WlIdentityCertificate::ok() const {
  return direct_equal && closure_rank == fused_rank && chain_u.lands_in == "G_w" && chain_w.lands_in == "G_u" &&
         coeff_formula && coeff_distinct;
}

int compare_closure(const sring::SRing& fused, const std::vector<int>& x, int* rounds) {
  const int n = fused.n;
  const auto colors = cc::cayley_closure_colors(n, {std::vector<std::int64_t>(x.begin(), x.end())}, rounds);
  std::map<int, int> to_class, to_color;
  for (int v = 0; v < n; ++v) {
    const int c = colors[v], k = fused.class_of[v];
    auto [a, fresh_a] = to_class.emplace(c, k);
    auto [b, fresh_b] = to_color.emplace(k, c);
    if (a->second != k || b->second != c)
      fail(ErrorKind::IdentityFails, "closure and A* separate differently at residue " + std::to_string(v));
  }
  return static_cast<int>(to_class.size());
}

WlIdentityCertificate verify_wl_identity(const HardInstance& inst, const Budgets& budgets) {
  const auto& ex = need_explicit(inst, "wl-identity");
  const int n = ex.fused.n;
  if (n > budgets.wl_points)
    fail(ErrorKind::SuiteNotApplicable, "wl-identity runs up to " + std::to_string(budgets.wl_points) + " points");
  const auto& shape = inst.shape;
  const int b = shape.b();
  WlIdentityCertificate cert;
  cert.fused_rank = ex.fused.rank();
  cert.closure_rank = compare_closure(ex.fused, ex.x_star, &cert.rounds);
  cert.direct_equal = true;

  const int order_u = static_cast<int>(mult::mask_order(shape, shape.g_u(b)));
  const int order_w = static_cast<int>(mult::mask_order(shape, shape.g_w(b)));
  const int first_w = b;
  cert.chain_u = extract(n, ex.x_star, {shape.factors[0].first, shape.factors[0].second}, order_u, order_w);
  cert.chain_w = extract(n, ex.x_star, {shape.factors[first_w].first, shape.factors[first_w].second}, order_u, order_w);

  std::vector<std::vector<int>> rows_u, rows_w;
  std::vector<i64> sizes_u, sizes_w;
  for (const auto& x : inst.x_star) {
    if (x.i > 0 && x.j > 0) continue;
    auto part = sring::preimage(n, mult::to_section(shape, x.section), as_int(x.residues));
    std::sort(part.begin(), part.end());
    (x.j == 0 ? rows_u : rows_w).push_back(part);
    (x.j == 0 ? sizes_u : sizes_w).push_back(static_cast<i64>(part.size()));
  }
  const auto y_u = meet_subgroup(n, ex.x_star, order_u);
  const auto y_w = meet_subgroup(n, ex.x_star, order_w);
  cert.coeff_u = coefficients(n, y_u, rows_u);
  cert.coeff_w = coefficients(n, y_w, rows_w);

  auto formula = [](const std::vector<i64>& a, std::size_t y, const std::vector<i64>& sizes) {
    if (a[0] != static_cast<i64>(y)) return false;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      if (a[i + 1] != static_cast<i64>(y) - sizes[i]) return false;
    return true;
  };
  auto distinct = [](std::vector<i64> a) {
    std::sort(a.begin(), a.end());
    return std::adjacent_find(a.begin(), a.end()) == a.end();
  };
  cert.coeff_formula = formula(cert.coeff_u, y_u.size(), sizes_u) && formula(cert.coeff_w, y_w.size(), sizes_w);
  cert.coeff_distinct = distinct(cert.coeff_u) && distinct(cert.coeff_w);
  return cert;
}

// ---- no isomorphism ------------------------------------------------------------------------

NoIsoCertificate verify_no_iso(const HardInstance& inst, const Budgets& budgets) {
  const auto& shape = inst.shape;
  const auto& g = inst.params.graph;
  const int a = shape.a(), b = shape.b();
  if (2 * a >= 64 || (std::uint64_t{1} << (2 * a)) > budgets.candidates)
    fail(ErrorKind::BudgetExceeded, "4^" + std::to_string(a) + " candidate tuples exceed the budget");
  NoIsoCertificate cert;
  cert.candidates = std::uint64_t{1} << (2 * a);

  // allowed[e][x][y]: the edge section accepts Klein elements x at u and y at w.
  std::vector<std::array<std::array<bool, 4>, 4>> allowed(g.edges.size());
  std::vector<std::vector<int>> later_edges(a);  // edges closed when their larger end is assigned
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, w] = g.edges[e];
    const PSection s = shape.pair_section(u + 1, w - b + 1);
    const auto& coset = inst.c.at(s);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        mult::VertexUnits f{std::vector<i64>(a, 1)};
        f.unit[u] = mult::klein_unit(shape, u, x);
        f.unit[w] = mult::klein_unit(shape, w, y);
        allowed[e][x][y] = contains(coset, mult::section_unit(shape, f, s));
      }
    later_edges[std::max(u, w)].push_back(static_cast<int>(e));
  }

  std::vector<int> t(a, 0);
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == a) {
      if (cert.survivors++ == 0) cert.survivor = t;
      return;
    }
    for (int x = 0; x < 4; ++x) {
      t[v] = x;
      bool ok = true;
      for (int e : later_edges[v]) {
        const auto [u, w] = g.edges[e];
        ok = ok && allowed[e][t[u]][t[w]];
      }
      if (ok) self(self, v + 1);
    }
  };
  dfs(dfs, 0);

  const auto sys = klein::edge_system(inst.klein, inst.params.e0, std::vector<char>(a, 1));
  cert.gf2_consistent = sys.consistent();
  cert.gf2_solutions = sys.consistent() ? std::uint64_t{1} << (2 * a - sys.rank()) : 0;
  cert.agrees = cert.survivors == cert.gf2_solutions;

  if (cert.survivor) {
    // Every S0 section must accept the least survivor, not only the edge sections.
    const auto m = mult::mu_elements(shape, *cert.survivor);
    for (const auto& [s, coset] : inst.c)
      if (!contains(coset, mult::section_unit(shape, m, s)))
        fail(ErrorKind::IdentityFails, "survivor leaves the coset on " + psection_text(shape, s));
    if (inst.ex) {
      const auto f = mult::realize_inner_multiplier(inst.ex->base, mult::to_inner(shape, m, inst.ex->s0));
      cert.realized = mult::is_scheme_isomorphism(inst.ex->fused, f, inst.ex->phi);
    }
  }
  return cert;
}

// ---- local systems of multipliers ---------------------------------------------------------

int multiplier_locality(int k) { return k / 6; }

LocalMultiplierSystem build_local_multiplier_system(const HardInstance& inst, int locality, std::size_t max_sets) {
  if (locality < 1) fail(ErrorKind::BadParams, "locality must be positive");
  LocalMultiplierSystem sys;
  sys.locality = locality;
  sys.klein = klein::local_iso_system(inst.klein, inst.params.e0, std::min(2 * locality, inst.shape.a()), max_sets);
  for (std::size_t i = 0; i < sys.klein.sets.size(); ++i) sys.set_index[sys.klein.sets[i]] = static_cast<int>(i);
  return sys;
}

std::vector<int> covering_set(const HardInstance& inst, const std::vector<PSection>& key) {
  auto v = mult::covering_vertices(inst.shape, key);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> system_tuple(const HardInstance& inst, const LocalMultiplierSystem& sys,
                              const std::vector<PSection>& key) {
  const auto cover = covering_set(inst, key);
  auto it = sys.set_index.find(cover);
  if (it == sys.set_index.end()) fail(ErrorKind::SectionNotCovered, "covering set larger than the system supports");
  return sys.klein.tuples[it->second];
}

mult::VertexUnits system_value(const HardInstance& inst, const LocalMultiplierSystem& sys,
                               const std::vector<PSection>& key) {
  return mult::mu_elements(inst.shape, system_tuple(inst, sys, key));
}

std::vector<int> system_correction(const HardInstance& inst, const LocalMultiplierSystem& sys,
                                   const std::vector<PSection>& key, const std::vector<PSection>& other) {
  const int i = sys.set_index.at(covering_set(inst, key));
  const int j = sys.set_index.at(covering_set(inst, other));
  auto it = sys.klein.corrections.find({std::min(i, j), std::max(i, j)});
  // Klein corrections are xor differences, so the orientation of the pair does not matter.
  if (it == sys.klein.corrections.end()) return std::vector<int>(inst.shape.a(), 0);
  return it->second;
}

LocalSystemCertificate check_local_multiplier_system(const HardInstance& inst, const LocalMultiplierSystem& sys,
                                                     std::size_t max_keys) {
  const auto& shape = inst.shape;
  const auto principal = principal_sections(inst);
  const int p = static_cast<int>(principal.size());

  // Keys: subsets of 1..locality principal sections, in lexicographic index order.
  std::vector<std::vector<PSection>> keys;
  std::vector<int> pick;
  auto gen = [&](auto&& self, int from) -> void {
    if (!pick.empty()) {
      if (keys.size() >= max_keys) fail(ErrorKind::BudgetExceeded, "more than " + std::to_string(max_keys) + " keys");
      std::vector<PSection> key;
      for (int i : pick) key.push_back(principal[i]);
      keys.push_back(std::move(key));
    }
    if (static_cast<int>(pick.size()) == sys.locality) return;
    for (int i = from; i < p; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  gen(gen, 0);

  LocalSystemCertificate cert;
  cert.keys = keys.size();
  std::vector<mult::VertexUnits> values;
  std::vector<std::vector<int>> covers;
  for (const auto& key : keys) {
    values.push_back(system_value(inst, sys, key));
    covers.push_back(covering_set(inst, key));
    for (const auto& [t, coset] : inst.c) {
      bool below = false;
      for (const auto& s : key) below = below || mult::is_subsection(t, s);
      if (!below) continue;
      ++cert.containments;
      if (!contains(coset, mult::section_unit(shape, values.back(), t)))
        fail(ErrorKind::CoherenceViolation, "value of a key leaves the coset on " + psection_text(shape, t));
    }
  }

  const auto aut = klein::edge_system(inst.klein, -1, std::vector<char>(shape.a(), 1));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<int>> witness;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      std::vector<PSection> common;
      std::set_intersection(keys[i].begin(), keys[i].end(), keys[j].begin(), keys[j].end(), std::back_inserter(common));
      ++cert.pairs;
      if (common.empty()) continue;
      const auto h = system_correction(inst, sys, keys[i], keys[j]);
      if (std::any_of(h.begin(), h.end(), [](int x) { return x != 0; })) {
        if (!aut.satisfies(klein::tuple_bits(h))) fail(ErrorKind::CoherenceViolation, "correction outside Aut(X)");
        ++cert.corrections;
        witness[{i, j}] = h;
      }
      const auto moved = mult::compose(shape, values[j], mult::mu_elements(shape, h));
      for (const auto& s : common)
        if (mult::section_unit(shape, values[i], s) != mult::section_unit(shape, moved, s))
          fail(ErrorKind::CoherenceViolation, "correction identity fails on " + psection_text(shape, s));
    }

  if (inst.ex) {
    const auto& ex = *inst.ex;
    mult::LocalSystem l;
    l.k = sys.locality;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::vector<sring::Section> key;
      for (const auto& s : keys[i]) key.push_back(mult::to_section(shape, s));
      std::sort(key.begin(), key.end());
      l.keys.push_back(std::move(key));
      l.values.push_back(mult::to_inner(shape, values[i], ex.s0));
    }
    std::map<std::vector<int>, int> pool_index;
    for (const auto& [ij, h] : witness) {
      auto [it, fresh] = pool_index.emplace(h, static_cast<int>(l.correction_pool.size()));
      if (fresh) l.correction_pool.push_back(mult::to_inner(shape, mult::mu_elements(shape, h), ex.s0));
      l.correction_of[{static_cast<int>(ij.first), static_cast<int>(ij.second)}] = it->second;
    }
    cert.explicit_report = mult::check_local_system(ex.fused, ex.base, l, ex.c);
  }
  return cert;
}

}  // namespace wlh::construction
