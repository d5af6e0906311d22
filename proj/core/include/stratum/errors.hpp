#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stratum {

// Caller passed something outside an operation's precondition.
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical domain restriction was violated (e.g. sin outside [-1.5, 1.5]).
struct DomainViolation : InvalidInput {
  explicit DomainViolation(const std::string& what) : InvalidInput(what) {}
};

// A CReal was asked for more precision than its construction supports.
struct PrecisionCapExceeded : std::runtime_error {
  PrecisionCapExceeded(const std::string& who, unsigned requested, unsigned cap)
      : std::runtime_error(who + ": precision index " + std::to_string(requested) +
                           " exceeds cap " + std::to_string(cap)),
        requested(requested), cap(cap) {}
  unsigned requested;
  unsigned cap;
};

// A membership query in decidable mode ran past its step budget.
struct StepBudgetExceeded : std::runtime_error {
  StepBudgetExceeded(std::uint64_t k, std::uint64_t budget)
      : std::runtime_error("membership query for k=" + std::to_string(k) +
                           " exceeded step budget " + std::to_string(budget)),
        offending_k(k), budget(budget) {}
  std::uint64_t offending_k;
  std::uint64_t budget;
};

// Text could not be parsed (program listings, serialized chains, rationals).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stratum
