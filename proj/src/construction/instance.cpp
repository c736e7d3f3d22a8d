#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "wlh/construction.hpp"
#include "wlh/numeric.hpp"

namespace wlh::construction {

namespace {

using boost::multiprecision::cpp_int;

constexpr int kMaxAutDimension = 20;

mult::Mask all_primes(const mult::BaseShape& shape) {
  mult::Mask m = 0;
  for (int v = 0; v < shape.a(); ++v) m |= mult::BaseShape::vertex_mask(v);
  return m;
}

cpp_int mask_product(const mult::BaseShape& shape, mult::Mask m) {
  cpp_int out = 1;
  for (int i = 0; i < 2 * shape.a(); ++i)
    if (m >> i & 1) out *= shape.prime(i);
  return out;
}

void validate_factorization(const klein::Graph& g, const klein::OneFactorization& f) {
  std::vector<int> seen(g.edges.size(), 0);
  for (const auto& match : f.matching) {
    std::set<int> ends;
    for (int e : match) {
      if (e < 0 || e >= static_cast<int>(g.edges.size())) fail(ErrorKind::BadParams, "factorization names a missing edge");
      ++seen[e];
      auto [u, w] = g.edges[e];
      if (!ends.insert(u).second || !ends.insert(w).second)
        fail(ErrorKind::BadParams, "factorization class is not a matching");
    }
  }
  for (int c : seen)
    if (c != 1) fail(ErrorKind::BadParams, "factorization must place every edge in exactly one matching");
}

std::vector<std::vector<int>> enumerate_aut(const klein::KleinConfig& k) {
  const auto basis = klein::aut_basis(k);
  const int dim = static_cast<int>(basis.size());
  if (dim > kMaxAutDimension) fail(ErrorKind::BudgetExceeded, "Aut(X) has dimension " + std::to_string(dim));
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
    gf2::BitVec v(2 * k.a());
    for (int i = 0; i < dim; ++i)
      if (mask >> i & 1)
        for (int bit = 0; bit < 2 * k.a(); ++bit)
          if (basis[i].get(bit)) v.flip(bit);
    out.push_back(klein::bits_tuple(v, k.a()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FusionReport check_projections(const HardInstance& inst) {
  const auto& shape = inst.shape;
  const int a = shape.a();
  FusionReport rep;
  rep.order = inst.m.size();
  rep.vertex_projections = true;
  for (int v = 0; v < a; ++v) {
    std::set<i64> units;
    for (const auto& m : inst.m) units.insert(m.unit[v]);
    const auto want = mult::klein_subgroup(shape, v);
    rep.vertex_projections = rep.vertex_projections && std::vector<i64>(units.begin(), units.end()) == want;
  }
  rep.pair_projections = true;
  const auto k_of_edge = inst.params.factorization.k_of_edge(inst.params.graph);
  for (int v = 0; v < a; ++v)
    for (int w = v + 1; w < a; ++w) {
      ++rep.pairs_checked;
      std::set<std::pair<i64, i64>> got, want;
      for (const auto& m : inst.m) got.insert({m.unit[v], m.unit[w]});
      const int e = inst.params.graph.edge_index(v, w);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (e < 0 || klein::rho(k_of_edge[e], x) == klein::rho(k_of_edge[e], y))
            want.insert({mult::klein_unit(shape, v, x), mult::klein_unit(shape, w, y)});
      rep.pair_projections = rep.pair_projections && got == want;
    }
  if (!rep.vertex_projections || !rep.pair_projections)
    fail(ErrorKind::IdentityFails, "projections of M differ from the Klein subgroup description");
  return rep;
}

std::string section_text(const mult::BaseShape& shape, const PSection& s) {
  return mult::mask_order_string(shape, s.U) + "/" + mult::mask_order_string(shape, s.L);
}

}  // namespace

std::vector<std::pair<i64, i64>> admissible_primes(int a) {
  std::vector<std::pair<i64, i64>> out;
  i64 p = 5;
  while (static_cast<int>(out.size()) < a) {
    i64 q = p + 1;
    while (!num::is_prime(q)) ++q;
    out.emplace_back(p, q);
    p = q + 1;
    while (!num::is_prime(p)) ++p;
  }
  return out;
}

InstanceParams make_params(const klein::Graph& g, std::vector<std::pair<i64, i64>> primes, int e0,
                           std::optional<klein::OneFactorization> f) {
  if (g.n < 2 || g.n % 2 != 0) fail(ErrorKind::BadParams, "the base graph needs an even positive vertex count");
  const int b = g.n / 2;
  for (auto [u, w] : g.edges)
    if (!(u < b && w >= b)) fail(ErrorKind::BadParams, "every edge must join u_1..u_b to w_1..w_b");
  if (static_cast<int>(primes.size()) != g.n)
    fail(ErrorKind::BadParams, "need one prime pair per vertex, got " + std::to_string(primes.size()));
  mult::make_shape(primes);
  if (e0 < -1 || e0 >= static_cast<int>(g.edges.size())) fail(ErrorKind::BadParams, "e0 is not an edge index");
  InstanceParams p;
  p.graph = g;
  p.primes = std::move(primes);
  p.e0 = e0;
  if (f) {
    validate_factorization(g, *f);
    p.factorization = *f;
  } else {
    try {
      p.factorization = klein::one_factorization(g, klein::is_cubic_bipartite(g));
    } catch (const Error& err) {
      fail(ErrorKind::BadParams, std::string("no one-factorization: ") + err.what());
    }
  }
  return p;
}

std::vector<std::string> preset_names() { return {"b1-5005", "k33", "q3", "heawood"}; }

InstanceParams preset(const std::string& name) {
  klein::Graph g;
  if (name == "b1-5005") g = klein::single_edge();
  else if (name == "k33") g = klein::k33();
  else if (name == "q3") g = klein::cube_q3();
  else if (name == "heawood") g = klein::heawood();
  else fail(ErrorKind::BadParams, "unknown preset '" + name + "'");
  auto p = make_params(g, admissible_primes(g.n), 0);
  p.name = name;
  return p;
}

int u_vertex(const HardInstance&, int i) { return i - 1; }
int w_vertex(const HardInstance& inst, int j) { return inst.b() + j - 1; }

sring::SRing base_sring(const mult::BaseShape& shape, i64 max_points) {
  if (mask_product(shape, all_primes(shape)) > max_points)
    fail(ErrorKind::BadParams, "degree exceeds the explicit budget of " + std::to_string(max_points));
  const int b = shape.b();
  auto tower = [&](int first) {
    auto r = sring::group_ring(static_cast<int>(shape.n_v(first)));
    for (int v = first + 1; v < first + b; ++v) r = sring::wreath_sring(r, sring::group_ring(static_cast<int>(shape.n_v(v))));
    return r;
  };
  return sring::tensor_sring(tower(0), tower(b));
}

std::vector<i64> section_group(const HardInstance& inst, const PSection& s) {
  std::set<i64> out;
  for (const auto& m : inst.m) out.insert(mult::section_unit(inst.shape, m, s));
  return {out.begin(), out.end()};
}

std::vector<PSection> principal_sections(const HardInstance& inst) { return mult::base_principal_sections(inst.shape); }

std::vector<int> outer_class_map(const sring::SRing& fused, const mult::OuterMultiplier& c) {
  const int n = fused.n;
  std::vector<int> phi(fused.rank(), -1);
  std::vector<char> hit(fused.rank(), 0);
  for (int t = 0; t < fused.rank(); ++t) {
    const auto& x = fused.classes[t];
    const sring::Section s = sring::principal_section(fused, x);
    const int q = std::max(s.order(), 1);
    auto it = c.cosets.find(s);
    if (it == c.cosets.end() || it->second.empty())
      fail(ErrorKind::SectionNotCovered, "outer multiplier misses principal section " + s.str());
    std::vector<int> proj, moved;
    for (int v : x) {
      const int y = sring::project(n, s, v);
      proj.push_back(y);
      moved.push_back(static_cast<int>(num::mulmod(it->second.front(), y, q)));
    }
    auto back = sring::preimage(n, s, proj);
    std::sort(back.begin(), back.end());
    if (back != x) fail(ErrorKind::IdentityFails, "class of " + std::to_string(x.front()) + " is not the preimage of its projection");
    auto img = sring::preimage(n, s, moved);
    std::sort(img.begin(), img.end());
    const int target = fused.class_of[img.front()];
    if (fused.classes[target] != img || hit[target])
      fail(ErrorKind::IdentityFails, "outer multiplier does not permute the classes at " + std::to_string(x.front()));
    hit[target] = 1;
    phi[t] = target;
  }
  return phi;
}

HardInstance build_instance(const InstanceParams& params, const Budgets& budgets) {
  HardInstance inst;
  inst.params = params;
  inst.shape = mult::make_shape(params.primes);
  const auto& shape = inst.shape;
  const int a = shape.a(), b = shape.b();
  if (params.graph.n != a) fail(ErrorKind::BadParams, "graph and prime list disagree on the vertex count");
  inst.n = mask_product(shape, all_primes(shape)).str();

  inst.klein = klein::klein_config(params.graph, params.factorization);
  inst.aut = enumerate_aut(inst.klein);
  for (const auto& t : inst.aut) inst.m.push_back(mult::mu_elements(shape, t));
  inst.fusion = check_projections(inst);

  // k0: a pair of Klein elements on e0 outside the projection of Aut(X).
  inst.k0.unit.assign(a, 1);
  PSection s_e0{};
  if (inst.twisted()) {
    const auto projection = klein::aut_projection(inst.klein, {params.graph.edges[params.e0].first,
                                                                params.graph.edges[params.e0].second});
    if (params.k0) {
      const std::vector<int> pick{params.k0->first, params.k0->second};
      if (pick[0] < 0 || pick[0] > 3 || pick[1] < 0 || pick[1] > 3) fail(ErrorKind::BadParams, "k0 entries must be 0..3");
      if (std::binary_search(projection.begin(), projection.end(), pick))
        fail(ErrorKind::BadParams, "k0 lies in the projection of Aut(X) to e0");
      inst.k0bar = *params.k0;
    } else {
      inst.k0bar = klein::least_non_member(inst.klein, params.e0);
    }
    const auto [u, w] = params.graph.edges[params.e0];
    inst.k0.unit[u] = mult::klein_unit(shape, u, inst.k0bar.first);
    inst.k0.unit[w] = mult::klein_unit(shape, w, inst.k0bar.second);
    s_e0 = shape.pair_section(u + 1, w - b + 1);
  }

  for (const auto& s : mult::base_s0_sections(shape)) {
    const bool under = inst.twisted() && mult::is_subsection(s, s_e0);
    std::set<i64> coset;
    for (const auto& m : inst.m)
      coset.insert(mult::section_unit(shape, under ? mult::compose(shape, inst.k0, m) : m, s));
    inst.c[s] = {coset.begin(), coset.end()};
  }

  for (int i = 0; i <= b; ++i)
    for (int j = 0; j <= b; ++j) {
      if (i == 0 && j == 0) continue;
      XClass x;
      x.i = i, x.j = j;
      x.section = shape.pair_section(i, j);
      x.section_text = section_text(shape, x.section);
      x.section_order = mult::mask_order(shape, x.section.U & ~x.section.L);
      x.residues = section_group(inst, x.section);
      x.factor = static_cast<int>(x.residues.size());
      x.size = (mask_product(shape, x.section.L) * x.factor).str();
      x.adjacent = i > 0 && j > 0 && params.graph.edge_index(u_vertex(inst, i), w_vertex(inst, j)) >= 0;
      x.literal_factor = (i == 1 || j == 1) ? 4 : (i > 1 && j > 1 && x.adjacent) ? 8 : 16;
      x.shifted_factor = (i == 0 || j == 0) ? 4 : x.adjacent ? 8 : 16;
      inst.x_star.push_back(std::move(x));
    }

  if (mask_product(shape, all_primes(shape)) > budgets.explicit_points) return inst;

  ExplicitPart ex;
  ex.base = base_sring(shape, budgets.explicit_points);
  const int n = ex.base.n;
  ex.s0 = sring::s0_sections(ex.base);
  for (const auto& m : inst.m) ex.group.push_back(mult::to_inner(shape, m, ex.s0));
  ex.fused = mult::algebraic_fusion(ex.base, ex.group);
  for (const auto& s : ex.s0) {
    auto it = inst.c.find(mult::to_psection(shape, s));
    if (it == inst.c.end()) fail(ErrorKind::SectionNotCovered, "explicit S0 section " + s.str() + " has no symbolic match");
    ex.c.cosets[s] = it->second;
  }
  if (ex.c.cosets.size() != inst.c.size()) fail(ErrorKind::IdentityFails, "explicit and symbolic S0 differ in size");
  ex.phi = outer_class_map(ex.fused, ex.c);

  std::set<int> all;
  for (const auto& x : inst.x_star) {
    const sring::Section s = mult::to_section(shape, x.section);
    std::vector<int> ys(x.residues.begin(), x.residues.end());
    auto part = sring::preimage(n, s, ys);
    std::sort(part.begin(), part.end());
    if (part.empty() || ex.fused.classes[ex.fused.class_of[part.front()]] != part)
      fail(ErrorKind::NoHighestClass, "X_{" + std::to_string(x.i) + "," + std::to_string(x.j) + "} is not a class of A*");
    all.insert(part.begin(), part.end());
  }
  ex.x_star.assign(all.begin(), all.end());
  ex.symmetric = true;
  for (int v : ex.x_star) ex.symmetric = ex.symmetric && all.count((n - v) % n);
  inst.ex = std::move(ex);
  return inst;
}

OuterReport check_outer_symbolic(const HardInstance& inst) {
  const auto& shape = inst.shape;
  OuterReport rep;
  for (const auto& [s, coset] : inst.c) {
    ++rep.sections;
    const auto group = section_group(inst, s);
    const i64 q = mult::mask_order(shape, s.U & ~s.L);
    // A coset of M_s: same size, and x^{-1} times the coset is M_s for its first element.
    if (coset.size() != group.size()) fail(ErrorKind::CoherenceViolation, "coset size differs from M_s on " + section_text(shape, s));
    if (q > 1) {
      const i64 inv = num::invmod(coset.front(), q);
      std::vector<i64> shifted;
      for (i64 y : coset) shifted.push_back(num::mulmod(inv, y, q));
      std::sort(shifted.begin(), shifted.end());
      if (shifted != group) fail(ErrorKind::CoherenceViolation, "value on " + section_text(shape, s) + " is not a coset of M_s");
    }
    // Reducing the coset of any S0 section above s must give the coset of s.
    for (const auto& [t, top] : inst.c) {
      if (t == s || !mult::is_subsection(s, t)) continue;
      ++rep.cross_checks;
      std::set<i64> reduced;
      for (i64 y : top) reduced.insert(q > 1 ? y % q : 0);
      if (std::vector<i64>(reduced.begin(), reduced.end()) != coset)
        fail(ErrorKind::CoherenceViolation,
             "cosets on " + section_text(shape, t) + " and " + section_text(shape, s) + " disagree");
    }
  }
  return rep;
}

SizeAudit size_audit(const HardInstance& inst) {
  SizeAudit audit;
  for (const auto& x : inst.x_star) {
    ++audit.rows;
    if (x.factor == x.literal_factor) ++audit.literal_matches;
    else
      audit.discrepancies.push_back("X_{" + std::to_string(x.i) + "," + std::to_string(x.j) + "}: computed " +
                                    std::to_string(x.factor) + " x |G_{i-1,j-1}|, table " +
                                    std::to_string(x.literal_factor));
    if (x.factor == x.shifted_factor) ++audit.shifted_matches;
  }
  return audit;
}

}  // namespace wlh::construction
