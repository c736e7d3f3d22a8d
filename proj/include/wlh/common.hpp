#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlh {

enum class ErrorKind {
  MalformedInput,
  AxiomViolation,
  NotAScheme,
  NotAParabolic,
  NotAUnionOfCells,
  DegreeMismatch,
  BudgetExceeded,
  NotCayley,
  NotAUnit,
  NotCoprime,
  NotADivisor,
  NotABasicSet,
  NotASection,
  NotQuasidense,
  NotInKleinSubgroup,
  NotACosetSRing,
  NotAGroup,
  NotDecomposable,
  SectionNotCovered,
  CoherenceViolation,
  NoPerfectMatching,
  NotAnEdge,
  Infeasible,
  BadParams,
  NoHighestClass,
  IdentityFails,
  RealizationUnavailable,
  SuiteNotApplicable,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind and a human-readable witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

/// Worker cap used by internal data-parallel loops; results never depend on it.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(begin, end) over disjoint chunks of [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace wlh
