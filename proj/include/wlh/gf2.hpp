#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace wlh::gf2 {

/// Dense bit vector over GF(2).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int size() const { return bits_; }
  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    if (v) words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(int i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
  BitVec& operator^=(const BitVec& o);
  bool any() const;
  bool operator==(const BitVec& o) const { return bits_ == o.bits_ && words_ == o.words_; }
  bool operator<(const BitVec& o) const { return words_ < o.words_; }

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Affine system A x = b over GF(2) with incremental row reduction.
class AffineSystem {
 public:
  explicit AffineSystem(int vars) : vars_(vars) {}

  int vars() const { return vars_; }
  void add_equation(const BitVec& coeffs, bool rhs);
  /// False once an inconsistent row 0 = 1 has been derived.
  bool consistent() const { return consistent_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  /// Particular solution with all free variables zero.
  std::optional<BitVec> particular() const;
  /// Basis of the solution space of the homogeneous system.
  std::vector<BitVec> kernel_basis() const;
  bool satisfies(const BitVec& x) const;
  /// Every solution, in the order of the free-variable counter; caller bounds the count.
  std::vector<BitVec> all_solutions() const;

 private:
  struct Row {
    BitVec coeffs;
    bool rhs;
    int pivot;
  };
  int vars_;
  bool consistent_ = true;
  std::vector<Row> rows_;  // reduced: each pivot column is zero in every other row
  std::vector<std::pair<BitVec, bool>> original_;
};

}  // namespace wlh::gf2
