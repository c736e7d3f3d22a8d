#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wlh/cc.hpp"

namespace wlh::sring {

/// Partition of Z_n into basic sets. Classes are sorted internally and ordered by least element,
/// so class 0 is always {0}.
struct SRing {
  int n = 0;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;

  int rank() const { return static_cast<int>(classes.size()); }
  const std::vector<int>& basic_set_of(int x) const { return classes[class_of[x]]; }
  bool operator==(const SRing& o) const { return n == o.n && classes == o.classes; }
};

/// Validates S1-S3; throws AxiomViolation naming the axiom and a witness.
SRing sring_from_partition(int n, std::vector<std::vector<int>> classes);
/// Same, from one label per residue.
SRing sring_from_labels(int n, const std::vector<int>& labels);

SRing group_ring(int n);
/// Rank 2 ring {0}, Z_n \ {0}; rank 1 when n = 1.
SRing trivial_sring(int n);

/// Cayley scheme; cell index equals class index.
cc::CoherentConfiguration cayley_scheme(const SRing& a);
/// Inverse of cayley_scheme; NotCayley when some cell is not translation-invariant.
SRing sring_of_scheme(const cc::CoherentConfiguration& x);

/// Smallest S-ring in which every given set is an A-set.
SRing wl_closure_sets(int n, const std::vector<std::vector<int>>& sets);
SRing wl_closure_set(int n, const std::vector<int>& x);

/// Orbits of the unit group generated by m acting by multiplication.
SRing cyclotomic(int n, const std::vector<std::int64_t>& m);

/// X^(m) = {m x}; NotCoprime unless gcd(m, n) = 1.
std::vector<int> sw_power(int n, const std::vector<int>& x, std::int64_t m);
/// X^[p] = {p x : |(x + H) meets X| not divisible by p}, H the subgroup of order p.
/// NotADivisor unless p is a prime dividing n.
std::vector<int> sw_extract(int n, const std::vector<int>& x, int p);

/// Tensor product over Z_{n1 n2} through x -> (x mod n1, x mod n2); NotCoprime.
SRing tensor_sring(const SRing& a, const SRing& b);
/// Wreath product over Z_{n1 n2}: a lives on the subgroup of order n1 (multiples of n2),
/// b on the quotient by it (x mod n2).
SRing wreath_sring(const SRing& a, const SRing& b);

// ---- subgroups and sections ------------------------------------------------

/// Subgroups are named by their order d | n; the subgroup is the multiples of n / d.
bool is_a_set(const SRing& a, const std::vector<int>& x);
bool is_a_subgroup(const SRing& a, int d);
/// Orders of all A-subgroups, increasing.
std::vector<int> a_subgroups(const SRing& a);
/// Order of the subgroup generated by x.
int generated_order(int n, const std::vector<int>& x);
/// Order of rad(x) = the largest subgroup H with x + H = x.
int radical_order(int n, const std::vector<int>& x);
bool is_coset(int n, const std::vector<int>& x);

struct Section {
  int U = 1;
  int L = 1;
  int order() const { return U / L; }
  bool operator==(const Section&) const = default;
  auto operator<=>(const Section&) const = default;
  std::string str() const { return std::to_string(U) + "/" + std::to_string(L); }
};
/// Parses "U/L".
Section parse_section(const std::string& text);

/// s is a subsection of t.
bool is_subsection(const Section& s, const Section& t);
/// t is a multiple of s: L = U meet L' and U' = U L'.
bool is_multiple(const Section& t, const Section& s);
/// pi_s(x) for x in the U-subgroup, as a residue mod |s|.
int project(int n, const Section& s, int x);
/// All x in Z_n with x in U and pi_s(x) in ys.
std::vector<int> preimage(int n, const Section& s, const std::vector<int>& ys);

Section principal_section(const SRing& a, const std::vector<int>& basic_set);
/// The S-ring A_s over Z_{|s|}; NotASection when U or L is not an A-subgroup or L does not divide U.
SRing restrict_sring(const SRing& a, const Section& s);

struct SectionPoset {
  std::vector<Section> sections;        ///< all A-sections, sorted
  std::vector<int> equivalence_class;   ///< projective-equivalence label per section (least index)
  std::vector<Section> principal;       ///< principal sections, sorted and deduplicated
};
SectionPoset sections(const SRing& a);
/// Subsections of sections projectively equivalent to principal ones.
std::vector<Section> s0_sections(const SRing& a);
std::vector<Section> s0_sections(const SRing& a, const SectionPoset& poset);

bool is_coset_sring(const SRing& a);
bool is_quasidense(const SRing& a);
/// A is finer than (or equal to) b: every class of b is a union of classes of a.
bool refines(const SRing& a, const SRing& b);
/// Smallest coset S-ring containing a; NotQuasidense.
SRing coset_closure(const SRing& a);

// ---- automorphisms and normality --------------------------------------------

cc::AutGroup automorphism_group(const SRing& a, std::uint64_t node_budget = 50'000'000);
/// Bijections f with f(0) = 0 and f(X) = phi(X) for every class; phi maps class indices of a to b.
std::vector<cc::Bijection> normalized_isos(const SRing& a, const SRing& b, const std::vector<int>& phi,
                                           const cc::SearchOptions& opts = {});
/// Right translations normal in Aut(Cay(a)), by brute-force automorphism search.
bool is_normal(const SRing& a, std::uint64_t node_budget = 50'000'000);

struct NormalityReport {
  std::optional<bool> is_normal;          ///< empty when the degree exceeds the search budget
  std::optional<bool> is_totally_normal;
  bool structural = false;                ///< decided without search (coset ring)
  std::vector<Section> s0;
  std::vector<Section> non_normal;        ///< members of s0 found not normal
};
/// Sections up to budget_points points are decided by search; above it only the coset shortcut applies.
NormalityReport classify_normality(const SRing& a, int budget_points = 256);

}  // namespace wlh::sring
