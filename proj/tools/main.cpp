// wlhard: generate and verify circulant instances built from Klein configurations.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "wlh/construction.hpp"
#include "wlh/io.hpp"
#include "wlh/klein.hpp"
#include "wlh/wldim.hpp"

namespace {

using namespace wlh;
using io::json;
using tools::IoError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBadParams = 3;
constexpr int kExitParse = 4;
constexpr int kExitNotApplicable = 5;
constexpr int kExitFailed = 6;
constexpr int kExitBudget = 7;
constexpr int kExitDegree = 8;
constexpr int kExitIo = 9;
constexpr int kExitInternal = 10;

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success, every check passed\n"
    "  2  usage error\n"
    "  3  invalid parameters (BadParams)\n"
    "  4  unparsable input (ParseError, MalformedInput)\n"
    "  5  suite not applicable to this instance (SuiteNotApplicable)\n"
    "  6  a verification check failed\n"
    "  7  budget exceeded (BudgetExceeded)\n"
    "  8  degree mismatch (DegreeMismatch)\n"
    "  9  file system error\n"
    " 10  internal error\n";

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadParams:
    case ErrorKind::NotAUnit:
    case ErrorKind::NotCoprime:
    case ErrorKind::NotAnEdge:
      return kExitBadParams;
    case ErrorKind::ParseError:
    case ErrorKind::MalformedInput:
      return kExitParse;
    case ErrorKind::SuiteNotApplicable:
      return kExitNotApplicable;
    case ErrorKind::BudgetExceeded:
      return kExitBudget;
    case ErrorKind::DegreeMismatch:
      return kExitDegree;
    case ErrorKind::AxiomViolation:
    case ErrorKind::IdentityFails:
    case ErrorKind::CoherenceViolation:
    case ErrorKind::NoHighestClass:
    case ErrorKind::Infeasible:
    case ErrorKind::SectionNotCovered:
    case ErrorKind::RealizationUnavailable:
      return kExitFailed;
    default:
      return kExitInternal;
  }
}

struct Globals {
  std::uint64_t seed = 1;
  std::int64_t budget_points = 100000;
  std::uint64_t budget_tuples = 0;  // 0 keeps each operation's default
  unsigned threads = 0;
  std::string format = "text";
  std::string out;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_input(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw IoError("cannot read " + path);
  return io::read_file(path);
}

construction::Budgets budgets(const Globals& g) {
  construction::Budgets b;
  b.explicit_points = g.budget_points;
  if (g.budget_tuples) b.candidates = g.budget_tuples;
  return b;
}

void print(const Globals& g, const json& j, const std::string& text) {
  if (g.format == "json") std::cout << j.dump(2) << '\n';
  else std::cout << text;
}

// ---- gen ----------------------------------------------------------------------------------

struct GenArgs {
  std::string preset;
  std::string graph_file;
  std::string primes;
  int e0 = 0;
  std::string k0;
  std::string name = "custom";
};

std::vector<std::pair<std::int64_t, std::int64_t>> parse_primes(const std::string& text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) fail(ErrorKind::ParseError, "prime pairs look like 5,7;11,13");
    try {
      out.emplace_back(std::stoll(item.substr(0, comma)), std::stoll(item.substr(comma + 1)));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad prime pair '" + item + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad integer '" + item + "'");
    }
  }
  return out;
}

std::string cayley_edge_list(const construction::HardInstance& inst) {
  const int n = inst.ex->fused.n;
  std::ostringstream out;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int x : inst.ex->x_star) {
      const int b = (a + x) % n;
      if (a < b || !inst.ex->symmetric) edges.emplace_back(a, b);
    }
  out << (inst.ex->symmetric ? "graph " : "digraph ") << n << ' ' << edges.size() << '\n';
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
  return out.str();
}

int cmd_gen(const Globals& g, const GenArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  construction::InstanceParams params;
  if (!args.preset.empty()) {
    params = construction::preset(args.preset);
  } else {
    if (args.graph_file.empty()) fail(ErrorKind::BadParams, "gen needs --preset or --graph");
    const auto graph = klein::parse_edge_list(read_input(args.graph_file));
    auto primes = args.primes.empty() ? construction::admissible_primes(graph.n) : parse_primes(args.primes);
    params = construction::make_params(graph, primes, args.e0);
    params.name = args.name;
    if (!args.k0.empty()) {
      const auto k = parse_ints(args.k0);
      if (k.size() != 2) fail(ErrorKind::ParseError, "--k0 takes two Klein elements, e.g. 0,2");
      params.k0 = std::make_pair(k[0], k[1]);
    }
  }
  const auto inst = construction::build_instance(params, budgets(g));
  const json instance = io::instance_to_json(inst);

  std::ostringstream text;
  text << "instance " << params.name << ": a = " << inst.shape.a() << ", n = " << inst.n << ", |Aut(X)| = "
       << inst.m.size() << "\n";
  for (const auto& x : inst.x_star)
    text << "  X_{" << x.i << "," << x.j << "} on " << x.section_text << ": " << x.size << " elements\n";
  if (inst.ex)
    text << "explicit: rank(A*) = " << inst.ex->fused.rank() << ", out-degree " << inst.ex->x_star.size()
         << (inst.ex->symmetric ? ", symmetric" : ", not symmetric") << "\n";

  if (!g.out.empty()) {
    tools::Manifest manifest("gen", g.seed, {{"name", params.name}, {"e0", params.e0}, {"n", inst.n}});
    manifest.emit(g.out, "instance.json", instance.dump(2) + "\n");
    if (inst.ex) manifest.emit(g.out, "cayley.edges", cayley_edge_list(inst));
    manifest.certificate("fusion_projections", instance["certificates"]);
    manifest.certificate("size_audit", io::to_json(construction::size_audit(inst)));
    manifest.timing("total", seconds_since(t0));
    manifest.write(g.out);
    text << "wrote " << g.out << "\n";
  }
  print(g, instance, text.str());
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------------------------

struct VerifyArgs {
  std::string instance;
  std::string suite;
  int locality = 0;
  int m = 2;
  std::size_t samples = 1000;
};

int cmd_verify(const Globals& g, const VerifyArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const json stored = io::parse_json(read_input(args.instance));
  const auto params = io::params_from_json(stored);
  const auto b = budgets(g);
  const auto inst = construction::build_instance(params, b);

  json record{{"instance", params.name}, {"suite", args.suite}};
  auto finish = [&](bool ok, json report, const std::string& summary) {
    record["ok"] = ok;
    record["report"] = std::move(report);
    if (!g.out.empty()) {
      tools::Manifest manifest("verify " + args.suite, g.seed, {{"instance", args.instance}, {"suite", args.suite}});
      manifest.emit(g.out, "verify-" + args.suite + ".json", record.dump(2) + "\n");
      manifest.certificate(args.suite, record["report"]);
      manifest.timing("total", seconds_since(t0));
      manifest.write(g.out);
    }
    print(g, record, std::string(ok ? "PASS " : "FAIL ") + args.suite + ": " + summary + "\n");
    return ok ? kExitOk : kExitFailed;
  };

  if (const auto diff = io::compare_instance(inst, stored)) {
    record["failure"] = "stored instance differs from the rebuilt one at " + *diff;
    return finish(false, json::object(), "stored instance differs from the rebuilt one at " + *diff);
  }

  const auto& s = args.suite;
  if (s == "axioms") {
    // Re-validation: the Klein partition through make_config, the S-rings through S1-S3.
    const auto k = klein::klein_config(inst.params.graph, inst.params.factorization);
    json rep{{"klein_cells", k.x.rank()}};
    if (inst.ex) {
      sring::sring_from_partition(inst.ex->base.n, inst.ex->base.classes);
      sring::sring_from_partition(inst.ex->fused.n, inst.ex->fused.classes);
      rep["base_rank"] = inst.ex->base.rank();
      rep["fused_rank"] = inst.ex->fused.rank();
    }
    rep["outer_symbolic"] = io::to_json(construction::check_outer_symbolic(inst));
    rep["size_audit"] = io::to_json(construction::size_audit(inst));
    return finish(true, rep, "configuration, S-ring and outer multiplier axioms hold");
  }
  if (s == "klein") {
    const auto r = klein::verify_klein(inst.klein);
    return finish(r.ok(), io::to_json(r), std::to_string(r.cells) + " cells, |Aut(X)| = " + r.aut_order);
  }
  if (s == "fusion") {
    const auto c = construction::verify_fusion(inst, b);
    return finish(c.ok(), io::to_json(c),
                  "rank " + std::to_string(c.fused_rank) + ", " + std::to_string(c.normal_undecided) +
                      " sections above the normality search budget");
  }
  if (s == "wl-identity") {
    const auto c = construction::verify_wl_identity(inst, b);
    return finish(c.ok(), io::to_json(c), "closure rank " + std::to_string(c.closure_rank) + " equals rank(A*)");
  }
  if (s == "no-iso") {
    const auto c = construction::verify_no_iso(inst, b);
    std::string summary = std::to_string(c.survivors) + " of " + std::to_string(c.candidates) + " candidates survive";
    if (c.realized) summary += *c.realized ? ", survivor realized as an isomorphism" : ", survivor NOT realized";
    const bool ok = c.agrees && (!c.realized || *c.realized);
    return finish(ok, io::to_json(c), summary);
  }
  if (s == "local-system") {
    int locality = args.locality;
    if (locality <= 0) locality = std::max(1, construction::multiplier_locality(klein::graph_diagnostics(inst.params.graph).k));
    const auto sys = construction::build_local_multiplier_system(inst, locality);
    const auto c = construction::check_local_multiplier_system(inst, sys);
    auto rep = io::to_json(c);
    rep["locality"] = locality;
    return finish(true, rep, std::to_string(c.keys) + " keys at locality " + std::to_string(locality));
  }
  if (s == "duplicator") {
    if (!inst.ex) fail(ErrorKind::SuiteNotApplicable, "the duplicator suite needs an explicit instance");
    const int locality = std::max(args.locality, (args.m + 1) * (args.m + 1));
    const auto sys = construction::build_local_multiplier_system(inst, locality);
    wldim::DuplicatorOptions opts;
    opts.m = args.m;
    opts.samples = args.samples;
    opts.seed = g.seed;
    const auto r = wldim::scripted_duplicator(inst, sys, opts);
    const auto eq = wldim::wl_m_equivalent(wldim::from_sring(inst.ex->fused), wldim::from_sring(inst.ex->fused),
                                           inst.ex->phi, 2);
    json rep{{"duplicator", io::to_json(r)}, {"wl2_equivalent", io::to_json(eq)}};
    return finish(r.ok() && eq.equivalent, rep,
                  std::to_string(r.tuples) + " tuples, " + std::to_string(r.violations) + " violations");
  }
  fail(ErrorKind::BadParams, "unknown suite '" + s + "'");
}

// ---- diag, wl, game -------------------------------------------------------------------------------

int cmd_diag(const Globals& g, const std::string& file) {
  const auto graph = klein::parse_edge_list(read_input(file));
  const auto d = klein::graph_diagnostics(graph);
  std::ostringstream text;
  text << "vertices " << d.vertices << ", edges " << d.edges << ", components " << d.component_count << "\n"
       << "vertex connectivity " << d.vertex_connectivity << ", min separator " << d.min_separator_size << "\n"
       << "epsilon " << (d.epsilon.exact ? std::to_string(d.epsilon.num) + "/" + std::to_string(d.epsilon.den)
                                         : "> " + std::to_string(d.epsilon.bound))
       << ", k " << d.k << "\neigenvalues";
  for (double e : d.eigenvalues) text << ' ' << (std::abs(e) < 1e-9 ? 0.0 : e);
  text << "\n";
  print(g, io::to_json(d), text.str());
  return kExitOk;
}

int cmd_wl(const Globals& g, const std::string& file, int m) {
  const auto graph = klein::parse_edge_list(read_input(file));
  const auto c = wldim::wl_m(wldim::from_graph(graph), m, g.budget_tuples ? g.budget_tuples : 8000);
  auto j = io::to_json(c);
  std::ostringstream text;
  text << m << "-dim WL: " << c.classes() << " tuple colors after " << c.rounds << " rounds\n";
  if (m >= 2) {
    const int pairs = wldim::pair_partition(c).cells;
    j["pair_classes"] = pairs;
    text << pairs << " stable pair colors\n";
  }
  print(g, j, text.str());
  return kExitOk;
}

int cmd_game(const Globals& g, const std::string& fx, const std::string& fy, int m, const std::string& phi_text) {
  const auto gx = klein::parse_edge_list(read_input(fx));
  const auto gy = klein::parse_edge_list(read_input(fy));
  if (gx.n != gy.n) fail(ErrorKind::DegreeMismatch, "graphs have " + std::to_string(gx.n) + " and " + std::to_string(gy.n) + " vertices");
  const auto x = wldim::from_graph(gx), y = wldim::from_graph(gy);
  const std::vector<int> phi = phi_text == "identity" ? std::vector<int>{0, 1, 2} : parse_ints(phi_text);
  const auto game = wldim::pebble_game(x, y, phi, m + 1);
  const auto eq = wldim::wl_m_equivalent(x, y, phi, m, g.budget_tuples ? g.budget_tuples : 8000);
  json j{{"pebbles", m + 1}, {"game", io::to_json(game)}, {"wl_equivalent", io::to_json(eq)}};
  std::ostringstream text;
  text << "game with " << m + 1 << " pebbles: " << wldim::to_string(game.winner) << " wins\n"
       << m << "-dim WL: " << (eq.equivalent ? "equivalent" : "distinguished") << "\n";
  print(g, j, text.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate and verify circulant graphs with large WL-dimension from Klein configurations."};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--budget-points", g.budget_points, "largest degree built explicitly")->capture_default_str();
  app.add_option("--budget-tuples", g.budget_tuples, "tuple / candidate budget (0 keeps the defaults)");
  app.add_option("--threads", g.threads, "worker cap (0 = hardware)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--out", g.out, "directory for emitted files and the manifest");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "build an instance from a preset or a graph");
  c_gen->add_option("--preset", gen.preset, "b1-5005, k33, q3 or heawood");
  c_gen->add_option("--graph", gen.graph_file, "edge list file ('graph n m' then m lines 'u w')");
  c_gen->add_option("--primes", gen.primes, "prime pairs per vertex, e.g. 5,7;11,13");
  c_gen->add_option("--e0", gen.e0, "twisted edge index, -1 for none")->capture_default_str();
  c_gen->add_option("--k0", gen.k0, "Klein elements on the twisted edge, e.g. 0,2");
  c_gen->add_option("--name", gen.name, "instance name")->capture_default_str();

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "rebuild an instance file and run a verification suite");
  c_ver->add_option("instance", ver.instance, "instance.json")->required();
  c_ver->add_option("--suite", ver.suite, "suite")
      ->required()
      ->check(CLI::IsMember({"axioms", "klein", "fusion", "wl-identity", "no-iso", "local-system", "duplicator"}));
  c_ver->add_option("--locality", ver.locality, "local system locality (0 = from the separator bound)");
  c_ver->add_option("-m", ver.m, "tuple length for the duplicator")->capture_default_str();
  c_ver->add_option("--samples", ver.samples, "sampled tuples for the duplicator (0 = all)")->capture_default_str();

  std::string diag_file;
  auto* c_diag = app.add_subcommand("diag", "graph diagnostics: connectivity, separators, spectrum, expansion");
  c_diag->add_option("graph", diag_file, "edge list file")->required();

  std::string wl_file;
  int wl_m = 2;
  auto* c_wl = app.add_subcommand("wl", "run m-dimensional WL on a graph");
  c_wl->add_option("graph", wl_file, "edge list file")->required();
  c_wl->add_option("-m", wl_m, "dimension")->capture_default_str();

  std::string game_x, game_y, game_phi = "identity";
  int game_m = 1;
  auto* c_game = app.add_subcommand("game", "solve the pebble game with m + 1 pebbles on two graphs");
  c_game->add_option("x", game_x, "first edge list")->required();
  c_game->add_option("y", game_y, "second edge list")->required();
  c_game->add_option("-m", game_m, "WL dimension; the game uses m + 1 pebbles")->capture_default_str();
  c_game->add_option("--phi", game_phi, "color map 'identity' or c0,c1,c2 for (diagonal, edge, non-edge)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g.threads) set_thread_count(g.threads);
    if (c_gen->parsed()) return cmd_gen(g, gen);
    if (c_ver->parsed()) return cmd_verify(g, ver);
    if (c_diag->parsed()) return cmd_diag(g, diag_file);
    if (c_wl->parsed()) return cmd_wl(g, wl_file, wl_m);
    if (c_game->parsed()) return cmd_game(g, game_x, game_y, game_m, game_phi);
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    std::cerr << "error: " << e.what() << '\n';
    if (g.format == "json")
      std::cout << json{{"ok", false}, {"error", to_string(e.kind())}, {"message", e.what()}, {"exit_code", code}}.dump(2)
                << '\n';
    return code;
  } catch (const IoError& e) {
    std::cerr << "error: IO: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
