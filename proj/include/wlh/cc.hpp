#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlh/common.hpp"

namespace wlh::cc {

/// Ordered pair list; relation literals in files use the same shape.
using Relation = std::vector<std::pair<int, int>>;

/// Partition of the ordered pairs of {0..size-1}; cell_of is row-major.
struct RelationPartition {
  int size = 0;
  int cells = 0;
  std::vector<std::int32_t> cell_of;

  int at(int a, int b) const { return cell_of[static_cast<std::size_t>(a) * size + b]; }
  bool operator==(const RelationPartition&) const = default;

  /// Renumbers arbitrary integer labels to 0..k-1 in order of first occurrence.
  static RelationPartition from_labels(int size, const std::vector<std::int64_t>& labels);
  /// Pair partition of Z_size induced by a residue coloring: cell(a, b) = color(b - a).
  static RelationPartition from_residue_colors(int size, const std::vector<int>& colors);
};

struct StructureEntry {
  int r;
  int s;
  std::int64_t count;
};

/// Cells at or below this rank also keep a dense c[r][s][t] table.
void set_dense_threshold(int cells);
int dense_threshold();

/// A validated coherent configuration; immutable after make_config.
class CoherentConfiguration {
 public:
  int size() const { return part_.size; }
  int rank() const { return part_.cells; }
  int cell(int a, int b) const { return part_.at(a, b); }
  const RelationPartition& partition() const { return part_; }

  const std::vector<std::vector<int>>& fibers() const { return fibers_; }
  int fiber_of(int point) const { return fiber_of_[point]; }
  int transpose(int s) const { return transpose_[s]; }
  bool is_diagonal(int s) const { return diagonal_[s]; }
  int source_fiber(int s) const { return src_fiber_[s]; }
  int target_fiber(int s) const { return dst_fiber_[s]; }
  /// |alpha s| for alpha in the source fiber of s.
  std::int64_t valency(int s) const { return valency_[s]; }
  std::pair<int, int> representative(int s) const { return rep_[s]; }

  /// c_{rs}^t = |alpha r intersect beta s*| for (alpha, beta) in t.
  std::int64_t intersection(int r, int s, int t) const;
  /// Nonzero intersection numbers for fixed t, sorted by (r, s).
  const std::vector<StructureEntry>& structure(int t) const { return structure_[t]; }

  bool is_scheme() const { return fibers_.size() == 1; }
  bool is_regular() const;
  /// True when every cell is invariant under the translations of Z_size.
  bool translation_invariant() const { return translation_invariant_; }

 private:
  friend CoherentConfiguration make_config(RelationPartition);
  RelationPartition part_;
  std::vector<std::vector<int>> fibers_;
  std::vector<int> fiber_of_, transpose_, src_fiber_, dst_fiber_;
  std::vector<bool> diagonal_;
  std::vector<std::int64_t> valency_;
  std::vector<std::pair<int, int>> rep_;
  std::vector<std::vector<StructureEntry>> structure_;
  std::vector<std::int64_t> dense_;
  bool translation_invariant_ = false;
};

/// Validates CC1-CC3 and computes the structure constants.
/// Throws AxiomViolation naming the failing axiom, cells and a witness pair.
CoherentConfiguration make_config(RelationPartition partition);

CoherentConfiguration trivial(int n);
CoherentConfiguration discrete(int n);
/// Orbital scheme of the regular cyclic group on n points: cell(a, b) = b - a mod n.
CoherentConfiguration regular_cyclic(int n);

/// 2-dimensional WL closure of the given relations; canonical cell numbering.
CoherentConfiguration coherent_closure(int n, const std::vector<Relation>& generators);
/// Same closure, returning only the partition (no validation cost).
RelationPartition closure_partition(int n, const std::vector<Relation>& generators);
/// Closure for translation-invariant inputs on Z_n given as residue sets.
/// Returns the residue coloring c with closure cell(a, b) = c(b - a); the numbering
/// equals the one produced by closure_partition on the lifted relations.
std::vector<int> cayley_closure_colors(int n, const std::vector<std::vector<std::int64_t>>& generators,
                                       int* rounds = nullptr);
/// Cayley closure with one generating relation per label value (labels must be non-negative).
std::vector<int> cayley_closure_of_labels(int n, const std::vector<int>& labels, int* rounds = nullptr);

/// Tensor product; point (alpha, alpha') has index alpha * |y| + alpha'.
CoherentConfiguration tensor(const CoherentConfiguration& x, const CoherentConfiguration& y);
/// Wreath product with x as the inner factor; point (alpha, alpha') has index alpha' * |x| + alpha.
CoherentConfiguration wreath(const CoherentConfiguration& x, const CoherentConfiguration& y);
/// Quotient modulo an equivalence e given as a relation; e may be partial (support smaller than the points).
/// Returns the quotient on the classes of e, ordered by least member.
CoherentConfiguration quotient(const CoherentConfiguration& x, const Relation& e,
                               std::vector<std::vector<int>>* classes = nullptr);
CoherentConfiguration restrict_to(const CoherentConfiguration& x, const std::vector<int>& delta);

/// Equivalence relation as a class label per point.
using Equivalence = std::vector<int>;
/// (rad(s), span(s)) as class labels; labels are least members of the class.
std::pair<Equivalence, Equivalence> radical_and_span(int n, const Relation& s);

Relation cells_to_relation(const CoherentConfiguration& x, const std::vector<int>& cells);

// ---- isomorphisms -------------------------------------------------------

using CellMap = std::vector<int>;
using Bijection = std::vector<int>;

struct SearchOptions {
  bool first_only = false;
  std::size_t limit = 0;             ///< stop after this many results (0 = unbounded)
  std::uint64_t node_budget = 50'000'000;  ///< search nodes before BudgetExceeded
  std::vector<std::pair<int, int>> pins;  ///< forced point images
};

/// Generic search over pair-colored structures: f with color_y(f a, f b) = color_x(a, b).
std::vector<Bijection> colored_isomorphisms(int n, const std::function<int(int, int)>& color_x,
                                            const std::function<int(int, int)>& color_y,
                                            const SearchOptions& opts);

std::vector<CellMap> find_algebraic_isos(const CoherentConfiguration& x, const CoherentConfiguration& y,
                                         std::size_t limit = 0);
bool is_algebraic_iso(const CoherentConfiguration& x, const CoherentConfiguration& y, const CellMap& phi);
std::vector<Bijection> find_combinatorial_isos(const CoherentConfiguration& x, const CoherentConfiguration& y,
                                               const CellMap& phi, const SearchOptions& opts = {});
bool is_combinatorial_iso(const CoherentConfiguration& x, const CoherentConfiguration& y, const CellMap& phi,
                          const Bijection& f);

/// Generators and order of Aut for pair-colored structures, via a stabilizer chain.
struct AutGroup {
  std::vector<Bijection> generators;
  std::vector<int> base;
  std::vector<int> orbit_sizes;
  long double order() const;
  std::string order_string() const;
};
AutGroup automorphism_group(int n, const std::function<int(int, int)>& color, std::uint64_t node_budget = 50'000'000);
AutGroup automorphism_group(const CoherentConfiguration& x, std::uint64_t node_budget = 50'000'000);

struct BinaryReport {
  bool binary = true;
  int m_max = 0;
  std::uint64_t tuples_checked = 0;
  std::uint64_t classes_checked = 0;
  /// Two tuples with equal arrays and no automorphism between them.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> counterexample;
};
/// Checks the binary property up to arity m_max; requires size^m_max <= tuple_budget.
BinaryReport is_binary(const CoherentConfiguration& x, int m_max, std::uint64_t tuple_budget = 2'000'000);

}  // namespace wlh::cc
