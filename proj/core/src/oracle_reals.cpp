#include "stratum/oracle_reals.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "stratum/errors.hpp"

namespace stratum {

struct OracleReal::Impl {
  StageFn fn;
  unsigned level = 0;
  std::string description;

  mutable std::mutex mu;
  mutable std::map<std::uint64_t, Rational> cache;
};

OracleReal OracleReal::make(StageFn fn, unsigned level, std::string description) {
  auto impl = std::make_shared<Impl>();
  impl->fn = std::move(fn);
  impl->level = level;
  impl->description = std::move(description);
  OracleReal r;
  r.impl_ = std::move(impl);
  return r;
}

Rational OracleReal::stage_approximant(std::uint64_t s) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find(s);
    if (it != impl_->cache.end()) return it->second;
  }
  Rational v = impl_->fn(s);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->cache.emplace(s, std::move(v)).first->second;
}

unsigned OracleReal::level() const { return impl_->level; }
const std::string& OracleReal::description() const { return impl_->description; }

namespace {

Rational dyadic_sum(const std::vector<std::uint64_t>& ks) {
  // sum 2^-(k+1), exact
  Rational acc(0);
  for (auto k : ks) acc += Rational(1, BigInt(1) << (k + 1));
  return acc;
}

}  // namespace

OracleReal witness_real(unsigned n) {
  if (n < 1) throw InvalidInput("witness_real: level must be >= 1");
  return OracleReal::make(
      [n](std::uint64_t s) { return dyadic_sum(jump_stage_set(n, s)); }, n,
      "jump-sum(" + std::to_string(n) + ")");
}

OracleReal specker() {
  // Same stage values as witness_real(1), packaged as the classical
  // computable-monotone-bounded sequence with no computable limit.
  return OracleReal::make(
      [](std::uint64_t s) { return dyadic_sum(jump_stage_set(1, s)); }, 1,
      "specker-limit");
}

namespace {

bool decide_membership(const Program& p, std::uint64_t k, std::uint64_t budget) {
  RunResult r = run_bounded(p, k, budget);
  if (!r.halted) throw StepBudgetExceeded(k, budget);
  return r.value != 0;
}

}  // namespace

CReal sum_real_decidable(const Program& membership, std::uint64_t step_budget) {
  auto approx = [membership, step_budget](unsigned n) {
    Rational acc(0);
    for (std::uint64_t k = 0; k <= std::uint64_t{n} + 1; ++k)
      if (decide_membership(membership, k, step_budget))
        acc += Rational(1, BigInt(1) << (k + 1));
    return acc;
  };
  auto seq = [membership, step_budget](std::uint64_t j) {
    Rational acc(0);
    for (std::uint64_t k = 0; k <= j; ++k)
      if (decide_membership(membership, k, step_budget))
        acc += Rational(1, BigInt(1) << (k + 1));
    return acc;
  };
  return CReal::make(approx, seq, [](unsigned n) { return std::uint64_t{n} + 1; }, 1,
                     "sum-decidable(" + std::to_string(membership.size()) + " instrs)");
}

OracleReal sum_real_enumerable(const Program& semi_decider) {
  return OracleReal::make(
      [semi_decider](std::uint64_t s) {
        std::vector<std::uint64_t> members;
        for (std::uint64_t k = 0; k < s; ++k)
          if (run_bounded(semi_decider, k, s).halted) members.push_back(k);
        return dyadic_sum(members);
      },
      1, "sum-enumerable");
}

std::variant<CReal, OracleReal> sum_real(const Program& descriptor, SumMode mode,
                                         std::uint64_t step_budget) {
  if (mode == SumMode::decidable) return sum_real_decidable(descriptor, step_budget);
  return sum_real_enumerable(descriptor);
}

std::uint64_t ackermann(std::uint64_t m, std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> memo;
  if (m == 0) return n + 1;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({m, n});
    if (it != memo.end()) return it->second;
  }
  std::uint64_t result = (n == 0) ? ackermann(m - 1, 1) : ackermann(m - 1, ackermann(m, n - 1));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(m, n), result);
  return result;
}

CReal ackermann_real(unsigned cutoff) {
  if (cutoff > 3)
    throw InvalidInput(
        "ackermann_real: cutoff must be <= 3 (A(4,4) underflows every "
        "representable precision)");
  Rational finite(0);
  for (unsigned k = 0; k <= cutoff; ++k)
    finite += Rational(1, BigInt(1) << ackermann(k, k));
  // Tail sum_{k>cutoff} 2^-A(k,k) < 2^(1-A(cutoff+1,cutoff+1)), so the finite
  // sum is a valid approximant up to precision A(cutoff+1,cutoff+1) - 1.
  unsigned cap;
  if (cutoff >= 3) {
    cap = 65534;  // A(4,4) >= 2^65536 - 3; anything representable works
  } else {
    std::uint64_t next = ackermann(cutoff + 1, cutoff + 1);
    cap = static_cast<unsigned>(next - 1);
  }
  return CReal::make([finite](unsigned) { return finite; },
                     [finite](std::uint64_t) { return finite; },
                     [](unsigned) { return std::uint64_t{0}; }, 1,
                     "ackermann-sum(" + std::to_string(cutoff) + ")", cap);
}

Program make_empty_set_program() { return {{Op::Halt, 0, 0}}; }

Program make_evens_program() {
  // r0 = 1 iff r1 is even
  return {
      {Op::JzDec, 1, 4},  // 0: r1==0 -> even
      {Op::JzDec, 1, 3},  // 1: r1==0 -> odd
      {Op::JzDec, 2, 0},  // 2: unconditional jump (r2 stays 0)
      {Op::Halt, 0, 0},   // 3: odd
      {Op::Inc, 0, 0},    // 4: even
      {Op::Halt, 0, 0},   // 5
  };
}

Program make_finite_set_program(const std::vector<std::uint64_t>& members) {
  // Lines 0..max test r1 == i by decrementing; hits jump to a shared
  // accept block, the fallthrough (and misses) to a shared HALT.
  std::uint64_t limit = 0;
  for (auto m : members) limit = std::max(limit, m + 1);
  Program p;
  std::uint64_t reject_line = limit;
  std::uint64_t accept_line = limit + 1;
  for (std::uint64_t i = 0; i < limit; ++i) {
    bool hit = std::find(members.begin(), members.end(), i) != members.end();
    p.push_back({Op::JzDec, 1, hit ? accept_line : reject_line});
  }
  p.push_back({Op::Halt, 0, 0});  // reject
  p.push_back({Op::Inc, 0, 0});   // accept
  p.push_back({Op::Halt, 0, 0});
  return p;
}

}  // namespace stratum
