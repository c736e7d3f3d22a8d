#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlh/klein.hpp"
#include "wlh/multipliers.hpp"
#include "wlh/sring.hpp"

namespace wlh::construction {

using i64 = std::int64_t;
using mult::PSection;

// ---- parameters ---------------------------------------------------------------

struct InstanceParams {
  std::string name = "custom";
  klein::Graph graph;  ///< u_1..u_b = 0..b-1, w_1..w_b = b..2b-1
  klein::OneFactorization factorization;
  std::vector<std::pair<i64, i64>> primes;  ///< (p_v, q_v) per vertex
  int e0 = 0;                               ///< twisted edge; -1 leaves the outer multiplier untwisted
  /// Klein elements (x_u, x_w) of k0 on the fibers of e0; the least non-member when empty.
  std::optional<std::pair<int, int>> k0;
};

/// The first a pairs of consecutive admissible primes: (5,7), (11,13), (17,19), (23,29), ...
std::vector<std::pair<i64, i64>> admissible_primes(int a);

/// Validates the graph (bipartite across the split at b, cubic unless a = 2), the primes and e0.
/// Computes a one-factorization when none is given. BadParams on any violation.
InstanceParams make_params(const klein::Graph& g, std::vector<std::pair<i64, i64>> primes, int e0,
                           std::optional<klein::OneFactorization> f = std::nullopt);

/// "b1-5005", "k33", "q3", "heawood"; BadParams otherwise.
InstanceParams preset(const std::string& name);
std::vector<std::string> preset_names();

struct Budgets {
  i64 explicit_points = 100000;     ///< build the explicit ring up to this degree
  i64 wl_points = 6000;             ///< explicit closure checks up to this degree
  std::uint64_t candidates = 1u << 22;  ///< exhaustive multiplier-tuple search limit
  int normality_points = 256;       ///< sections searched for normality up to this order
};

// ---- the instance ----------------------------------------------------------------

/// One basic set X_{i,j} of the connection set.
struct XClass {
  int i = 0;
  int j = 0;
  PSection section;            ///< s_{i,j} = G_{i,j} / G_{i-1,j-1}, clamped
  std::string section_text;    ///< "U/L" with decimal subgroup orders
  i64 section_order = 1;
  std::vector<i64> residues;   ///< projection to s_{i,j}: the M-orbit of 1, sorted
  std::string size;            ///< |G_{i-1,j-1}| * |residues|, decimal
  int factor = 0;              ///< |residues|
  bool adjacent = false;       ///< {u_i, w_j} is an edge
  int literal_factor = 0;      ///< 4 if i = 1 or j = 1, 8 if i, j > 1 and adjacent, 16 otherwise
  int shifted_factor = 0;      ///< same table with the boundary rows i = 0 or j = 0 as the 4 case
};

struct FusionReport {
  std::size_t order = 0;        ///< |M|
  bool vertex_projections = false;  ///< M_v = K_v for every v
  bool pair_projections = false;    ///< M_{v,v'} is the rho-agreement subgroup on edges, K_v x K_v' otherwise
  std::size_t pairs_checked = 0;
};

/// Explicit data, present when n fits the explicit budget.
struct ExplicitPart {
  sring::SRing base;                      ///< A
  std::vector<sring::Section> s0;         ///< S0(A)
  std::vector<mult::InnerMultiplier> group;  ///< M on S0, in the order of HardInstance::aut
  sring::SRing fused;                     ///< A* = A^M
  mult::OuterMultiplier c;                ///< c(e0) on S0
  std::vector<int> phi;                   ///< phi_c on class indices of A*
  std::vector<int> x_star;                ///< sorted residues
  bool symmetric = false;                 ///< X* = -X*
};

struct HardInstance {
  InstanceParams params;
  mult::BaseShape shape;
  std::string n;              ///< decimal degree
  klein::KleinConfig klein;
  std::vector<std::vector<int>> aut;  ///< Aut(X) inside K_V as Klein tuples
  std::vector<mult::VertexUnits> m;   ///< mu of each element of aut
  FusionReport fusion;
  std::pair<int, int> k0bar{0, 0};    ///< Klein elements on (u, w) of e0
  mult::VertexUnits k0;               ///< klein units of k0bar at the ends of e0, 1 elsewhere
  /// Outer multiplier on S0(A) as residue cosets mod |s|.
  std::map<PSection, std::vector<i64>> c;
  std::vector<XClass> x_star;
  std::optional<ExplicitPart> ex;

  bool is_explicit() const { return ex.has_value(); }
  bool twisted() const { return params.e0 >= 0; }
  int b() const { return shape.b(); }
};

HardInstance build_instance(const InstanceParams& params, const Budgets& budgets = {});

/// Explicit base ring (tensor of the two iterated wreath towers); BadParams when n exceeds max_points.
sring::SRing base_sring(const mult::BaseShape& shape, i64 max_points);

/// Index of (i, j) into the vertex ids: u_i is i - 1, w_j is b + j - 1.
int u_vertex(const HardInstance& inst, int i);
int w_vertex(const HardInstance& inst, int j);

/// Units of M restricted to a section, sorted and deduplicated.
std::vector<i64> section_group(const HardInstance& inst, const PSection& s);

/// Symbolic outer check: each coset has the size of M_s and is a coset of it, and the value
/// re-derived through every covering pair agrees. CoherenceViolation otherwise.
struct OuterReport {
  std::size_t sections = 0;
  std::size_t cross_checks = 0;
};
OuterReport check_outer_symbolic(const HardInstance& inst);

struct SizeAudit {
  std::size_t rows = 0;
  std::size_t literal_matches = 0;
  std::size_t shifted_matches = 0;
  std::vector<std::string> discrepancies;  ///< one line per row that differs from the literal table
};
SizeAudit size_audit(const HardInstance& inst);

/// phi_c on the classes of an explicit fused ring: X -> preimage of c_s X_s for its principal section.
/// IdentityFails when some class is not the full preimage of its projection.
std::vector<int> outer_class_map(const sring::SRing& fused, const mult::OuterMultiplier& c);

// ---- verification ------------------------------------------------------------------

struct FusionCertificate {
  int fused_rank = 0;
  int orbit_count = 0;         ///< M-orbits on residues, counted directly
  bool s0_equal = false;       ///< S0(A*) = S0(A)
  bool coset_closure_equal = false;  ///< (A*)_0 = A
  std::size_t restriction_checks = 0;  ///< (A*)_s = cyc(M_s, s) over S0
  std::size_t normal_searched = 0;     ///< sections decided normal by search
  std::size_t normal_undecided = 0;    ///< sections above the search budget
  std::vector<std::string> non_normal;
  mult::CoherenceReport outer;
  bool ok() const;
};
/// Explicit instances only; SuiteNotApplicable otherwise.
FusionCertificate verify_fusion(const HardInstance& inst, const Budgets& budgets = {});

struct ExtractionChain {
  std::vector<i64> primes;     ///< extraction primes in order
  std::size_t final_size = 0;
  i64 generated = 0;           ///< order of the subgroup generated by the result
  std::string lands_in;        ///< "G_u" or "G_w" (the top of that tower), or "neither"
};

struct WlIdentityCertificate {
  int closure_rank = 0;
  int fused_rank = 0;
  int rounds = 0;
  bool direct_equal = false;
  ExtractionChain chain_u;     ///< primes of u_1
  ExtractionChain chain_w;     ///< primes of w_1
  std::vector<i64> coeff_u;    ///< a_0..a_b over X* meet G_{u_b}
  std::vector<i64> coeff_w;
  bool coeff_formula = false;  ///< a_0 = |X| and a_i = |X| - |X_{i,0}| on both sides
  bool coeff_distinct = false;
  bool ok() const;
};

/// Residue-level closure of {x} compared with the classes of fused; IdentityFails naming the first
/// residue whose classes differ.
int compare_closure(const sring::SRing& fused, const std::vector<int>& x, int* rounds = nullptr);

/// Both checks on an explicit instance within budgets.wl_points; IdentityFails on a mismatch.
WlIdentityCertificate verify_wl_identity(const HardInstance& inst, const Budgets& budgets = {});

struct NoIsoCertificate {
  std::uint64_t candidates = 0;
  std::uint64_t survivors = 0;
  bool gf2_consistent = false;
  std::uint64_t gf2_solutions = 0;
  bool agrees = false;                     ///< survivors equal the GF(2) solution count
  std::optional<std::vector<int>> survivor;  ///< least surviving Klein tuple
  std::optional<bool> realized;            ///< explicit realization is an isomorphism under phi_c
  bool empty() const { return survivors == 0; }
};
/// Exhaustive search over the products of c on vertex sections; BudgetExceeded above budgets.candidates.
NoIsoCertificate verify_no_iso(const HardInstance& inst, const Budgets& budgets = {});

// ---- local systems of multipliers ---------------------------------------------------

/// Keys are sets of at most `locality` principal sections; the value of a key is mu(f_Delta) for the
/// Klein tuple of its covering vertex set.
struct LocalMultiplierSystem {
  int locality = 0;
  klein::LocalIsoSystem klein;                 ///< over vertex sets of size <= min(2 locality, a)
  std::map<std::vector<int>, int> set_index;   ///< vertex set -> index in klein.sets
};

/// Infeasible when the Klein local system does not exist at 2 * locality.
LocalMultiplierSystem build_local_multiplier_system(const HardInstance& inst, int locality,
                                                    std::size_t max_sets = 20000);
/// Locality supported by separators of size k: floor(k / 6).
int multiplier_locality(int k);

std::vector<int> covering_set(const HardInstance& inst, const std::vector<PSection>& key);
/// Klein tuple of a key.
std::vector<int> system_tuple(const HardInstance& inst, const LocalMultiplierSystem& sys,
                              const std::vector<PSection>& key);
mult::VertexUnits system_value(const HardInstance& inst, const LocalMultiplierSystem& sys,
                               const std::vector<PSection>& key);
/// Correction h in Aut(X) with f_key = f_other h on the common fibers, as a Klein tuple.
std::vector<int> system_correction(const HardInstance& inst, const LocalMultiplierSystem& sys,
                                   const std::vector<PSection>& key, const std::vector<PSection>& other);

struct LocalSystemCertificate {
  std::size_t keys = 0;
  std::size_t containments = 0;
  std::size_t pairs = 0;
  std::size_t corrections = 0;
  std::optional<mult::LocalSystemReport> explicit_report;  ///< check_local_system on explicit instances
};
/// Enumerates every key; BudgetExceeded above max_keys. CoherenceViolation on a failed clause.
LocalSystemCertificate check_local_multiplier_system(const HardInstance& inst, const LocalMultiplierSystem& sys,
                                                     std::size_t max_keys = 5000);

/// Sorted principal sections of A (and of A*).
std::vector<PSection> principal_sections(const HardInstance& inst);

}  // namespace wlh::construction
