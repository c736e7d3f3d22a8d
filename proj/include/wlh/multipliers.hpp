#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wlh/cc.hpp"
#include "wlh/sring.hpp"

namespace wlh::mult {

using sring::Section;
using sring::SRing;
using i64 = std::int64_t;

// ---- explicit multipliers over a concrete ring -------------------------------

/// One unit per section, stored modulo the section order (a one-point section stores 0).
struct InnerMultiplier {
  std::map<Section, i64> units;

  /// Throws SectionNotCovered when s has no entry.
  i64 unit(const Section& s) const;
  bool operator==(const InnerMultiplier&) const = default;
  auto operator<=>(const InnerMultiplier&) const = default;
};

InnerMultiplier identity_multiplier(const std::vector<Section>& sections);
/// Section units induced by multiplication with a global unit of Z_n.
InnerMultiplier from_global_unit(const std::vector<Section>& sections, i64 lambda);
/// Componentwise product; both sides must cover the same sections.
InnerMultiplier compose(const InnerMultiplier& a, const InnerMultiplier& b);
InnerMultiplier inverse(const InnerMultiplier& a);
/// Restriction to a subset of the sections.
InnerMultiplier restrict_to(const InnerMultiplier& m, const std::vector<Section>& sections);

struct CoherenceReport {
  std::size_t sections = 0;
  std::size_t subsection_clauses = 0;
  std::size_t equivalence_clauses = 0;
  std::size_t coset_checks = 0;
};

/// Every section of S0(a) carries a unit and both coherence clauses hold; CoherenceViolation otherwise.
CoherenceReport check_inner(const SRing& a, const InnerMultiplier& m);

/// Units of Z_|s| whose multiplication fixes every class of the restricted ring.
std::vector<i64> section_automorphism_units(const SRing& a, const Section& s);

/// One coset of unit residues per section, sorted.
struct OuterMultiplier {
  std::map<Section, std::vector<i64>> cosets;
};
/// Coset shape against section_automorphism_units, then both coherence clauses.
CoherenceReport check_outer(const SRing& a, const OuterMultiplier& c);

/// Fusion of a coset ring by a group of inner multipliers given elementwise.
/// NotACosetSRing, NotAGroup; the restriction law on S0 is asserted.
SRing algebraic_fusion(const SRing& a, const std::vector<InnerMultiplier>& group);

// ---- realization ------------------------------------------------------------

/// Tensor/wreath decomposition tree of a coset ring built from group rings.
struct Decomposition {
  enum class Kind { GroupRing, Tensor, Wreath } kind = Kind::GroupRing;
  int n = 1;
  /// Tensor: order of the first factor's subgroup; Wreath: order of the lower subgroup.
  int split = 1;
  std::vector<Decomposition> parts;
};
/// NotDecomposable when no tensor or wreath split reaches group rings.
Decomposition decompose(const SRing& a);

/// Normalized bijection realizing m on every principal section; NotDecomposable.
cc::Bijection realize_inner_multiplier(const SRing& a, const InnerMultiplier& m);
/// The class image f(X) equals the preimage of X_s^{m_s} for every class X.
bool realizes(const SRing& a, const InnerMultiplier& m, const cc::Bijection& f, std::string* why = nullptr);
/// f maps every class of a onto itself (f fixes 0).
bool is_ring_automorphism(const SRing& a, const cc::Bijection& f);
/// class(f(y) - f(x)) = phi(class(y - x)) for all pairs; quadratic in n.
bool is_scheme_isomorphism(const SRing& a, const cc::Bijection& f, const std::vector<int>& phi);
/// m lies in Mult_aut(fused): its realization over coset_ring is an automorphism of fused.
bool in_mult_aut(const SRing& fused, const SRing& coset_ring, const InnerMultiplier& m);

// ---- local systems ------------------------------------------------------------

struct LocalSystem {
  int k = 0;
  std::vector<std::vector<Section>> keys;  ///< sorted principal-section sets of size <= k
  std::vector<InnerMultiplier> values;
  /// Correction witness per key pair (i < j); an absent pair means the identity.
  std::vector<InnerMultiplier> correction_pool;
  std::map<std::pair<int, int>, int> correction_of;
};

struct LocalSystemReport {
  std::size_t keys = 0;
  std::size_t containments = 0;
  std::size_t pairs = 0;
  std::size_t corrections_certified = 0;
};
/// Checks containment in c, every correction identity, and Mult_aut membership of each witness.
LocalSystemReport check_local_system(const SRing& fused, const SRing& coset_ring, const LocalSystem& l,
                                     const OuterMultiplier& c);

// ---- the base ring of the construction in prime-basis form --------------------

using Mask = std::uint64_t;

/// Section U/L with U and L given as sets of prime indices.
struct PSection {
  Mask U = 0;
  Mask L = 0;
  bool operator==(const PSection&) const = default;
  auto operator<=>(const PSection&) const = default;
};

/// Tensor of two iterated wreaths of group rings of orders p_v q_v.
/// Vertices u_1..u_b are 0..b-1 and w_1..w_b are b..2b-1; prime 2v is p_v, prime 2v+1 is q_v.
struct BaseShape {
  std::vector<std::pair<i64, i64>> factors;

  int a() const { return static_cast<int>(factors.size()); }
  int b() const { return a() / 2; }
  i64 n_v(int v) const { return factors[v].first * factors[v].second; }
  i64 prime(int index) const { return index % 2 ? factors[index / 2].second : factors[index / 2].first; }
  static Mask vertex_mask(int v) { return Mask{3} << (2 * v); }
  /// G_{u_i} and G_{w_j}, 0 <= i, j <= b.
  Mask g_u(int i) const;
  Mask g_w(int j) const;
  /// G_{i,j} with negative indices clamped to 0.
  Mask g(int i, int j) const;
  /// Vertex section s_v.
  PSection vertex_section(int v) const;
  /// s_{i,j} = G_{i,j} / G_{i-1,j-1}, clamped.
  PSection pair_section(int i, int j) const;
};

/// Validates primes (distinct, odd, >= 5, p < q, squarefree product) and the even vertex count.
BaseShape make_shape(std::vector<std::pair<i64, i64>> factors);
/// Product of the primes in a mask; BadParams on overflow.
i64 mask_order(const BaseShape& shape, Mask m);
std::string mask_order_string(const BaseShape& shape, Mask m);
bool is_base_subgroup(const BaseShape& shape, Mask m);
bool is_subsection(const PSection& s, const PSection& t);
bool is_multiple(const PSection& t, const PSection& s);
std::vector<PSection> base_s0_sections(const BaseShape& shape);
std::vector<PSection> base_principal_sections(const BaseShape& shape);
/// Pairs (i, j), 0 <= i, j <= b, (i, j) != (0, 0), with s below s_{u_i, w_j} (i = 0 meaning no u vertex).
std::vector<std::pair<int, int>> covering_pairs(const BaseShape& shape, const PSection& s);
/// A covering vertex set: every section lies below s_{u,w} for some u, w in it (u, w genuine vertices).
std::vector<int> covering_vertices(const BaseShape& shape, const std::vector<PSection>& sections);
/// Conversions for explicit instances (n fits in int).
Section to_section(const BaseShape& shape, const PSection& s);
PSection to_psection(const BaseShape& shape, const Section& s);

/// Inner multiplier of the base ring as one unit mod n_v per vertex.
struct VertexUnits {
  std::vector<i64> unit;
  bool operator==(const VertexUnits&) const = default;
  auto operator<=>(const VertexUnits&) const = default;
};

/// NotAUnit; re-derives every S0 unit through each covering pair and requires agreement.
VertexUnits inner_from_vertex_data(const BaseShape& shape, const std::vector<i64>& units);
/// Unit of s modulo |s|.
i64 section_unit(const BaseShape& shape, const VertexUnits& m, const PSection& s);
/// Global unit mod n (n must fit).
i64 global_unit(const BaseShape& shape, const VertexUnits& m);
InnerMultiplier to_inner(const BaseShape& shape, const VertexUnits& m, const std::vector<Section>& sections);
VertexUnits compose(const BaseShape& shape, const VertexUnits& x, const VertexUnits& y);

/// Unit of K_v for a Klein element k (bit 0 flips the p component, bit 1 the q component).
i64 klein_unit(const BaseShape& shape, int v, int k);
/// Inverse of klein_unit; NotInKleinSubgroup.
int klein_element(const BaseShape& shape, int v, i64 unit);
/// The squares-to-one units mod n_v, sorted.
std::vector<i64> klein_subgroup(const BaseShape& shape, int v);
/// mu: Klein tuple (units mod n_v) to inner multiplier; NotInKleinSubgroup.
VertexUnits mu(const BaseShape& shape, const std::vector<i64>& f);
/// Same from Klein elements 0..3.
VertexUnits mu_elements(const BaseShape& shape, const std::vector<int>& f);

}  // namespace wlh::mult
