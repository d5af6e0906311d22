#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "stratum/rational.hpp"

namespace stratum {

// A constructive real: a rational Cauchy sequence q_j together with an
// explicit convergence modulus, plus a normalized precision-indexed view.
//
// Contracts every constructor in this library maintains:
//   * approximant(n) is a rational within 2^-n of the represented real, and
//     repeated calls return identical values;
//   * for all n and all j, k >= modulus(n):  |seq_at(j) - seq_at(k)| <= 2^-n.
//
// The precision-indexed approximant is the interface everything consumes;
// the (sequence, modulus) pair is kept so the raw Cauchy data stays
// inspectable. Values are immutable and safe for concurrent reads; the
// internal approximant cache is invisible (same input -> same output).
class CReal {
 public:
  using Approx = std::function<Rational(unsigned)>;
  using Seq = std::function<Rational(std::uint64_t)>;
  using Modulus = std::function<std::uint64_t(unsigned)>;

  CReal();  // zero

  static CReal make(Approx approx, Seq seq, Modulus modulus, unsigned level_tag,
                    std::string provenance,
                    std::optional<unsigned> precision_cap = std::nullopt);

  // Builds the canonical (sequence, modulus) view from an approximant map:
  // seq(j) = approximant(j), modulus(n) = n + 1.
  static CReal from_approx(Approx approx, unsigned level_tag, std::string provenance,
                           std::optional<unsigned> precision_cap = std::nullopt);

  Rational approximant(unsigned n) const;  // throws PrecisionCapExceeded past the cap
  Rational seq_at(std::uint64_t j) const;
  std::uint64_t modulus(unsigned n) const;

  unsigned level_tag() const;
  const std::string& provenance() const;
  std::optional<unsigned> precision_cap() const;

 private:
  struct Impl;
  explicit CReal(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// --- constructors ---------------------------------------------------------

// Constant sequence; modulus(n) = 0; level tag 0.
CReal from_rational(const Rational& q);

// approximant(n) = r.approximant(n+1) + s.approximant(n+1);
// modulus(n) = max of the inputs' moduli at n+1; level tag = max of inputs.
CReal add(const CReal& r, const CReal& s);
CReal negate(const CReal& r);
CReal sub(const CReal& r, const CReal& s);

// Precision shifts derived from the magnitude bounds B = |approximant(0)| + 1.
CReal mul(const CReal& r, const CReal& s);

// Heron iteration from 3/2; error at step k is at most 2^-2^k for k >= 1.
CReal sqrt2();

// 4 * sum (-1)^k / (2k+1). modulus(n) = 2^(n+2) terms; capped at precision
// index 17 to keep term counts near 2^18. Partial sums are evaluated in
// dyadic fixed point with enough guard bits to absorb per-term truncation.
CReal pi_leibniz();

// 16*arctan(1/5) - 4*arctan(1/239), exact rational partial sums with
// alternating-series tails. Fast enough for 50+ digits.
CReal pi_machin();

// sum 1/k!; modulus(n) = least N with 2/(N+1)! <= 2^-n.
CReal e_series();

// Alternating Taylor series around 0, composed with x's own approximant.
// Requires |x.approximant(1)| <= 1 (so |x| <= 3/2); throws DomainViolation.
CReal sin_taylor(const CReal& x);

// sum_k 2^-2k = 4/3, the granted-axiom constant used by the chains module.
CReal quarter_geometric();

// --- operations -----------------------------------------------------------

// Faithful truncation: digits d with |r - value(d)| < 10^-k, computed from
// the approximant at the least n with 2^-n <= 10^-(k+1). Requires k >= 1.
std::string to_decimal(const CReal& r, unsigned k);

enum class Cmp { less, greater, indistinguishable };

// Strict verdicts only when |r.approximant(n+2) - s.approximant(n+2)| > 2^-n,
// so a strict verdict is never wrong; otherwise indistinguishable at n.
Cmp cmp_at(const CReal& r, const CReal& s, unsigned n);

// r + eps/4 exactly; keeps r's level tag. Requires eps > 0.
CReal perturb(const CReal& r, const Rational& eps);

}  // namespace stratum
