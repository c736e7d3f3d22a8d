#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlh/cc.hpp"
#include "wlh/klein.hpp"
#include "wlh/multipliers.hpp"
#include "wlh/sring.hpp"

namespace wlh::construction {
struct HardInstance;
struct LocalMultiplierSystem;
}  // namespace wlh::construction

namespace wlh::wldim {

// ---- pair-colored structures ---------------------------------------------------

/// Points 0..n-1 with a color per ordered pair. Cayley structures store one color per residue,
/// color(a, b) = residue[b - a mod n], and never materialize the n^2 table.
struct Structure {
  int n = 0;
  std::vector<int> pair;     ///< row-major, empty for Cayley structures
  std::vector<int> residue;  ///< empty for dense structures

  int color(int a, int b) const {
    return residue.empty() ? pair[static_cast<std::size_t>(a) * n + b] : residue[((b - a) % n + n) % n];
  }
  bool is_cayley() const { return !residue.empty(); }
  /// Largest color + 1.
  int colors() const;
};

Structure from_config(const cc::CoherentConfiguration& x);
/// Diagonal 0, edge 1, non-edge 2.
Structure from_graph(const klein::Graph& g);
/// Cayley structure of an S-ring: color(a, b) is the class of b - a.
Structure from_sring(const sring::SRing& a);
/// MalformedInput unless colors has n^2 non-negative entries.
Structure from_pair_colors(int n, std::vector<int> colors);

// ---- m-dimensional WL -------------------------------------------------------------

/// Stable coloring of the m-tuples, indexed in base n with the first entry most significant.
struct TupleColoring {
  int m = 0;
  int n = 0;
  std::vector<int> color;
  int rounds = 0;
  std::vector<int> classes_per_round;  ///< entry 0 is the atomic coloring
  int classes() const { return classes_per_round.empty() ? 0 : classes_per_round.back(); }
};

std::uint64_t tuple_count(int n, int m);
std::size_t tuple_index(int n, const std::vector<int>& x);

/// m = 1 is color refinement over (color(a, g), color(g, a), c(g)); m >= 2 recolors x by the multiset
/// over g of (c(x[1 <- g]), ..., c(x[m <- g])), starting from the atomic type of the tuple.
/// BudgetExceeded when n^m passes budget.
TupleColoring wl_m(const Structure& s, int m, std::uint64_t budget = 8000);

/// pr_k of the coloring: a k-tuple is labeled by the set of colors of its extensions to m-tuples,
/// numbered canonically.
std::vector<int> projection(const TupleColoring& c, int k);

/// Pair partition (a, b) -> color of (a, b, b, ..., b); m >= 2.
cc::RelationPartition pair_partition(const TupleColoring& c);

struct EquivalenceResult {
  bool equivalent = false;
  int rounds = 0;
  bool cayley_path = false;
  std::vector<std::pair<int, int>> classes_per_round;  ///< joint class count and per-side agreement flag
  std::string reason;  ///< why the answer is false, empty otherwise
};

/// Joint refinement of both structures with a shared color dictionary; the colors of y enter through
/// phi^{-1} so paired colors start equal. False on differing point or color counts, when phi is not a
/// bijection of the colors, or when the color histograms differ in some round.
EquivalenceResult wl_m_equivalent(const Structure& x, const Structure& y, const std::vector<int>& phi, int m,
                                  std::uint64_t budget = 8000);

// ---- the pebble game -------------------------------------------------------------------

enum class Winner { Duplicator, Spoiler };
const char* to_string(Winner w);

struct GameResult {
  Winner winner = Winner::Spoiler;
  std::size_t states = 0;          ///< consistent positions examined
  std::size_t winning_states = 0;  ///< positions left in the Duplicator fixpoint
  int iterations = 0;
  bool decided_at_start = false;   ///< the initial position itself is inconsistent
};

/// Game with `pebbles` pebble pairs and the winning condition read through phi. Duplicator's positions
/// are the greatest fixpoint of: consistent, and for every pebble some bijection of the points such
/// that every placement of that pebble on (a, pi(a)) stays winning. DegreeMismatch on differing point
/// counts; BudgetExceeded above max_points. Initial tuples of different lengths lose for Duplicator.
GameResult pebble_game(const Structure& x, const Structure& y, const std::vector<int>& phi, int pebbles,
                       const std::vector<int>& init_x = {}, const std::vector<int>& init_y = {},
                       int max_points = 12);

// ---- the scripted Duplicator --------------------------------------------------------------

/// A local system in explicit form: a value per key (sorted principal sections) and the correction
/// multiplier between two keys.
struct ExplicitSystem {
  std::function<mult::InnerMultiplier(const std::vector<sring::Section>&)> value;
  std::function<mult::InnerMultiplier(const std::vector<sring::Section>&, const std::vector<sring::Section>&)>
      correction;
};

struct DuplicatorOptions {
  int m = 2;
  std::size_t samples = 1000;  ///< sampled m-tuples; 0 runs every tuple
  std::uint64_t seed = 1;
  std::uint64_t h0_budget = 5'000'000;  ///< search nodes for h0 when the coset ring is not a group ring
};

struct DuplicatorReport {
  int m = 0;
  std::size_t tuples = 0;
  std::size_t points_checked = 0;   ///< (tuple, alpha) pairs
  std::size_t realizations = 0;     ///< distinct keys realized
  std::size_t violations = 0;
  std::optional<std::string> first_violation;
  bool theta_bijective = true;
  bool theta_identity = true;       ///< every theta was the identity
  bool f_bijective = true;          ///< x -> x^f is injective on the checked tuples' classes
  bool ok() const { return violations == 0 && theta_bijective && f_bijective; }
};

/// For sampled x in G^m and every alpha: f = realization of value(S(x)), f^ of value(S(x alpha)),
/// h of correction(S(x), S(x alpha)), h0 an automorphism of the coset-closure scheme with
/// x^{f^ h0} = x^{f h}, theta = f^ h0 h^{-1}; checks R(x^f theta(alpha)) = R(x alpha)^phi and that
/// theta is a bijection. RealizationUnavailable when a value cannot be realized.
DuplicatorReport run_duplicator(const sring::SRing& a, const sring::SRing& a0, const std::vector<int>& phi,
                                const ExplicitSystem& sys, const DuplicatorOptions& opts);

/// Identity value and correction on S0(a0).
ExplicitSystem identity_system(const sring::SRing& a0);

/// The instance's local multiplier system in explicit form. When corrupt is set, keys containing that
/// section get the identity multiplier instead of their value.
ExplicitSystem instance_system(const construction::HardInstance& inst, const construction::LocalMultiplierSystem& sys,
                               std::optional<sring::Section> corrupt = std::nullopt);

/// Explicit instances only (SuiteNotApplicable otherwise); BadParams unless (m + 1)^2 <= sys.locality.
DuplicatorReport scripted_duplicator(const construction::HardInstance& inst,
                                     const construction::LocalMultiplierSystem& sys, const DuplicatorOptions& opts,
                                     std::optional<sring::Section> corrupt = std::nullopt);

}  // namespace wlh::wldim
