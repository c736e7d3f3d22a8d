#include <cmath>
#include <fstream>
#include <sstream>

#include "wlh/io.hpp"

namespace wlh::io {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const klein::Graph& g) {
  json edges = json::array();
  for (auto [u, w] : g.edges) edges.push_back({u, w});
  return {{"n", g.n}, {"edges", edges}};
}

json instance_to_json(const construction::HardInstance& inst) {
  const auto& p = inst.params;
  json primes = json::array();
  for (auto [a, b] : p.primes) primes.push_back({a, b});
  json factorization = json::array();
  for (const auto& m : p.factorization.matching) factorization.push_back(m);

  json symbolic = json::array();
  for (const auto& x : inst.x_star)
    symbolic.push_back({{"i", x.i},
                        {"j", x.j},
                        {"section", x.section_text},
                        {"residues", x.residues},
                        {"size", x.size},
                        {"factor", x.factor},
                        {"adjacent", x.adjacent},
                        {"literal_factor", x.literal_factor},
                        {"shifted_factor", x.shifted_factor}});
  json x_star{{"symbolic", symbolic}};
  if (inst.ex) x_star["explicit"] = {{"size", inst.ex->x_star.size()}, {"symmetric", inst.ex->symmetric},
                                     {"elements", inst.ex->x_star}};

  json out{{"name", p.name},
           {"a", inst.shape.a()},
           {"b", inst.b()},
           {"n", inst.n},
           {"primes", primes},
           {"graph", to_json(p.graph)},
           {"factorization", factorization},
           {"e0", p.e0}};
  out["k0"] = inst.twisted() ? json{inst.k0bar.first, inst.k0bar.second} : json(nullptr);
  out["X_star"] = x_star;
  json certificates{{"aut_order", inst.m.size()},
                    {"vertex_projections", inst.fusion.vertex_projections},
                    {"pair_projections", inst.fusion.pair_projections},
                    {"s0_sections", inst.c.size()}};
  if (inst.ex) certificates["fused_rank"] = inst.ex->fused.rank();
  out["certificates"] = certificates;
  return out;
}

construction::InstanceParams params_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "instance must be a JSON object");
  const auto g = get<json>(j, "graph");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : get<json>(g, "edges")) {
    if (!e.is_array() || e.size() != 2) fail(ErrorKind::ParseError, "edges must be pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  klein::Graph graph;
  try {
    graph = klein::make_graph(get<int>(g, "n"), edges);
  } catch (const Error& e) {
    fail(ErrorKind::ParseError, std::string("graph: ") + e.what());
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> primes;
  for (const auto& p : get<json>(j, "primes")) {
    if (!p.is_array() || p.size() != 2) fail(ErrorKind::ParseError, "primes must be pairs");
    primes.emplace_back(p[0].get<std::int64_t>(), p[1].get<std::int64_t>());
  }
  std::optional<klein::OneFactorization> f;
  if (j.contains("factorization") && !j["factorization"].is_null()) {
    const auto& fj = j["factorization"];
    if (!fj.is_array() || fj.size() != 3) fail(ErrorKind::ParseError, "factorization needs three matchings");
    klein::OneFactorization of;
    for (int k = 0; k < 3; ++k) of.matching[k] = fj[k].get<std::vector<int>>();
    f = of;
  }
  auto params = construction::make_params(graph, primes, get<int>(j, "e0"), f);
  if (j.contains("name")) params.name = get<std::string>(j, "name");
  if (j.contains("k0") && !j["k0"].is_null()) {
    const auto k = j["k0"];
    if (!k.is_array() || k.size() != 2) fail(ErrorKind::ParseError, "k0 must be a pair");
    params.k0 = std::make_pair(k[0].get<int>(), k[1].get<int>());
  }
  return params;
}

std::optional<std::string> compare_instance(const construction::HardInstance& inst, const json& stored) {
  const json fresh = instance_to_json(inst);
  for (const char* key : {"n", "a", "b", "k0"})
    if (stored.value(key, json()) != fresh[key]) return std::string(key);
  const auto& sx = stored.contains("X_star") ? stored["X_star"] : json();
  const auto& fs = fresh["X_star"]["symbolic"];
  if (!sx.contains("symbolic") || sx["symbolic"].size() != fs.size()) return std::string("X_star.symbolic");
  for (std::size_t r = 0; r < fs.size(); ++r)
    for (const auto& [field, value] : fs[r].items())
      if (sx["symbolic"][r].value(field, json()) != value)
        return "X_star.symbolic[" + std::to_string(r) + "]." + field;
  if (fresh["X_star"].contains("explicit")) {
    if (!sx.contains("explicit")) return std::string("X_star.explicit");
    for (const auto& [field, value] : fresh["X_star"]["explicit"].items())
      if (sx["explicit"].value(field, json()) != value) return "X_star.explicit." + field;
  }
  return std::nullopt;
}

json to_json(const klein::KleinReport& r) {
  return {{"ok", r.ok()},
          {"points", r.points},
          {"cells", r.cells},
          {"expected_cells", r.expected_cells},
          {"K1", r.k1},
          {"K2", r.k2},
          {"K2_exhaustive", r.k2_exhaustive},
          {"K3", r.k3},
          {"K4", r.k4},
          {"K5", r.k5},
          {"fiber_pairs", r.fiber_pairs},
          {"bijections_checked", r.bijections_checked},
          {"aut_order", r.aut_order},
          {"aut_dimension", r.aut_dimension},
          {"aut_order_agrees", r.aut_order_agrees},
          {"fiber_moving_iso", r.fiber_moving_iso ? json(*r.fiber_moving_iso) : json(nullptr)},
          {"failures", r.failures}};
}

json to_json(const klein::Diagnostics& d) {
  json eps{{"exact", d.epsilon.exact}, {"value", d.epsilon.value()}};
  if (d.epsilon.exact) eps["fraction"] = std::to_string(d.epsilon.num) + "/" + std::to_string(d.epsilon.den);
  json spectrum = json::array();
  for (double e : d.eigenvalues) spectrum.push_back(std::abs(e) < 1e-9 ? 0.0 : e);  // solver noise around 0
  return {{"vertices", d.vertices},
          {"edges", d.edges},
          {"components", d.component_count},
          {"vertex_connectivity", d.vertex_connectivity},
          {"min_separator_size", d.min_separator_size},
          {"eigenvalues", spectrum},
          {"epsilon", eps},
          {"k", d.k}};
}

json to_json(const construction::FusionCertificate& c) {
  return {{"ok", c.ok()},
          {"fused_rank", c.fused_rank},
          {"orbit_count", c.orbit_count},
          {"s0_equal", c.s0_equal},
          {"coset_closure_equal", c.coset_closure_equal},
          {"restriction_checks", c.restriction_checks},
          {"normal_searched", c.normal_searched},
          {"normal_undecided", c.normal_undecided},
          {"non_normal", c.non_normal},
          {"outer", {{"sections", c.outer.sections},
                     {"subsection_clauses", c.outer.subsection_clauses},
                     {"equivalence_clauses", c.outer.equivalence_clauses},
                     {"coset_checks", c.outer.coset_checks}}}};
}

json to_json(const construction::WlIdentityCertificate& c) {
  auto chain = [](const construction::ExtractionChain& ch) {
    return json{{"primes", ch.primes}, {"final_size", ch.final_size}, {"generated", ch.generated},
                {"lands_in", ch.lands_in}};
  };
  return {{"ok", c.ok()},
          {"closure_rank", c.closure_rank},
          {"fused_rank", c.fused_rank},
          {"rounds", c.rounds},
          {"direct_equal", c.direct_equal},
          {"chain_u", chain(c.chain_u)},
          {"chain_w", chain(c.chain_w)},
          {"coeff_u", c.coeff_u},
          {"coeff_w", c.coeff_w},
          {"coeff_formula", c.coeff_formula},
          {"coeff_distinct", c.coeff_distinct}};
}

json to_json(const construction::NoIsoCertificate& c) {
  json out{{"empty", c.empty()},
           {"candidates", c.candidates},
           {"survivors", c.survivors},
           {"gf2_consistent", c.gf2_consistent},
           {"gf2_solutions", c.gf2_solutions},
           {"agrees", c.agrees}};
  out["survivor"] = c.survivor ? json(*c.survivor) : json(nullptr);
  out["realized"] = c.realized ? json(*c.realized) : json(nullptr);
  return out;
}

json to_json(const construction::LocalSystemCertificate& c) {
  json out{{"keys", c.keys}, {"containments", c.containments}, {"pairs", c.pairs}, {"corrections", c.corrections}};
  if (c.explicit_report)
    out["explicit"] = {{"keys", c.explicit_report->keys},
                       {"containments", c.explicit_report->containments},
                       {"pairs", c.explicit_report->pairs},
                       {"corrections_certified", c.explicit_report->corrections_certified}};
  return out;
}

json to_json(const construction::SizeAudit& a) {
  return {{"rows", a.rows},
          {"literal_matches", a.literal_matches},
          {"shifted_matches", a.shifted_matches},
          {"discrepancies", a.discrepancies}};
}

json to_json(const construction::OuterReport& r) { return {{"sections", r.sections}, {"cross_checks", r.cross_checks}}; }

json to_json(const wldim::TupleColoring& c) {
  return {{"m", c.m}, {"n", c.n}, {"rounds", c.rounds}, {"classes", c.classes()}, {"classes_per_round", c.classes_per_round}};
}

json to_json(const wldim::EquivalenceResult& r) {
  json rounds = json::array();
  for (auto [classes, same] : r.classes_per_round) rounds.push_back({{"classes", classes}, {"histograms_equal", same != 0}});
  return {{"equivalent", r.equivalent}, {"rounds", r.rounds}, {"cayley_path", r.cayley_path},
          {"transcript", rounds}, {"reason", r.reason}};
}

json to_json(const wldim::GameResult& r) {
  return {{"winner", wldim::to_string(r.winner)},
          {"states", r.states},
          {"winning_states", r.winning_states},
          {"iterations", r.iterations},
          {"decided_at_start", r.decided_at_start}};
}

json to_json(const wldim::DuplicatorReport& r) {
  return {{"ok", r.ok()},
          {"m", r.m},
          {"tuples", r.tuples},
          {"points_checked", r.points_checked},
          {"realizations", r.realizations},
          {"violations", r.violations},
          {"first_violation", r.first_violation ? json(*r.first_violation) : json(nullptr)},
          {"theta_bijective", r.theta_bijective},
          {"theta_identity", r.theta_identity},
          {"f_bijective", r.f_bijective}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::MalformedInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

}  // namespace wlh::io
