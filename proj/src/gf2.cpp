#include "wlh/gf2.hpp"

#include "wlh/common.hpp"

namespace wlh::gf2 {

BitVec& BitVec::operator^=(const BitVec& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool BitVec::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

void AffineSystem::add_equation(const BitVec& coeffs, bool rhs) {
  if (coeffs.size() != vars_) fail(ErrorKind::MalformedInput, "equation width mismatch");
  original_.emplace_back(coeffs, rhs);
  BitVec c = coeffs;
  for (const auto& r : rows_)
    if (c.get(r.pivot)) {
      c ^= r.coeffs;
      rhs ^= r.rhs;
    }
  int pivot = -1;
  for (int i = 0; i < vars_; ++i)
    if (c.get(i)) {
      pivot = i;
      break;
    }
  if (pivot < 0) {
    if (rhs) consistent_ = false;
    return;
  }
  for (auto& r : rows_)
    if (r.coeffs.get(pivot)) {
      r.coeffs ^= c;
      r.rhs ^= rhs;
    }
  rows_.push_back({c, rhs, pivot});
}

std::optional<BitVec> AffineSystem::particular() const {
  if (!consistent_) return std::nullopt;
  BitVec x(vars_);
  for (const auto& r : rows_) x.set(r.pivot, r.rhs);
  return x;
}

std::vector<BitVec> AffineSystem::kernel_basis() const {
  std::vector<bool> is_pivot(vars_, false);
  for (const auto& r : rows_) is_pivot[r.pivot] = true;
  std::vector<BitVec> out;
  for (int f = 0; f < vars_; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(vars_);
    v.set(f, true);
    for (const auto& r : rows_)
      if (r.coeffs.get(f)) v.set(r.pivot, true);
    out.push_back(v);
  }
  return out;
}

bool AffineSystem::satisfies(const BitVec& x) const {
  for (const auto& [c, rhs] : original_) {
    bool acc = false;
    for (int i = 0; i < vars_; ++i)
      if (c.get(i) && x.get(i)) acc = !acc;
    if (acc != rhs) return false;
  }
  return true;
}

std::vector<BitVec> AffineSystem::all_solutions() const {
  auto p = particular();
  if (!p) return {};
  auto basis = kernel_basis();
  if (basis.size() > 30) fail(ErrorKind::BudgetExceeded, "solution space too large to enumerate");
  std::vector<BitVec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    BitVec x = *p;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if ((mask >> i) & 1u) x ^= basis[i];
    out.push_back(x);
  }
  return out;
}

}  // namespace wlh::gf2
