#include "wlh/common.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace wlh {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::NotAScheme: return "NotAScheme";
    case ErrorKind::NotAParabolic: return "NotAParabolic";
    case ErrorKind::NotAUnionOfCells: return "NotAUnionOfCells";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotCayley: return "NotCayley";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::NotABasicSet: return "NotABasicSet";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::NotQuasidense: return "NotQuasidense";
    case ErrorKind::NotInKleinSubgroup: return "NotInKleinSubgroup";
    case ErrorKind::NotACosetSRing: return "NotACosetSRing";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::SectionNotCovered: return "SectionNotCovered";
    case ErrorKind::CoherenceViolation: return "CoherenceViolation";
    case ErrorKind::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NoHighestClass: return "NoHighestClass";
    case ErrorKind::IdentityFails: return "IdentityFails";
    case ErrorKind::RealizationUnavailable: return "RealizationUnavailable";
    case ErrorKind::SuiteNotApplicable: return "SuiteNotApplicable";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / 64));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace wlh
