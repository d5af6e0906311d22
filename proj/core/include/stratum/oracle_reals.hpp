#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "stratum/creal.hpp"
#include "stratum/machine.hpp"

namespace stratum {

// A stage-indexed rational approximation relative to a staged jump oracle.
// Converges in the limit but carries no base-level modulus, so it never
// pretends to be a CReal. Stage values are deterministic and memoized.
class OracleReal {
 public:
  using StageFn = std::function<Rational(std::uint64_t)>;

  OracleReal() = default;
  static OracleReal make(StageFn fn, unsigned level, std::string description);

  Rational stage_approximant(std::uint64_t s) const;
  unsigned level() const;
  const std::string& description() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// r_n: stage s sums 2^-(k+1) over jump_stage_set(n, s). Values in [0, 1);
// level-1 stages are monotone nondecreasing. Requires n >= 1.
OracleReal witness_real(unsigned n);

// The computable monotone bounded sequence whose limit is the level-1
// witness real; every stage is a plain finite sum.
OracleReal specker();

enum class SumMode { decidable, enumerable };

// Decidable mode: the program must decide membership (halt with r0 != 0 for
// members) within the step budget; yields a CReal with modulus(n) = n + 1,
// approximant(n) summing 2^-(k+1) over members k <= n+1. A query running
// past the budget throws StepBudgetExceeded naming the offending k.
CReal sum_real_decidable(const Program& membership, std::uint64_t step_budget = 1000000);

// Enumerable mode: k is a member iff the program halts on input k; stage s
// sums over members k < s witnessed within s steps.
OracleReal sum_real_enumerable(const Program& semi_decider);

std::variant<CReal, OracleReal> sum_real(const Program& descriptor, SumMode mode,
                                         std::uint64_t step_budget = 1000000);

// Ackermann-Peter function, memoized; total for the small arguments used here.
std::uint64_t ackermann(std::uint64_t m, std::uint64_t n);

// sum_{k <= cutoff} 2^-A(k,k) plus the (invisible at desk precision) tail of
// the full series. Requires cutoff <= 3: A(4,4) dwarfs every representable
// precision, so its term lives entirely in the tail bound. The precision cap
// reflects where the truncated tail would become visible.
CReal ackermann_real(unsigned cutoff);

// Helpers for building membership programs used in tests and demos.
Program make_finite_set_program(const std::vector<std::uint64_t>& members);
Program make_evens_program();
Program make_empty_set_program();

}  // namespace stratum
