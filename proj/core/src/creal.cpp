#include "stratum/creal.hpp"

#include <boost/multiprecision/integer.hpp>

#include <map>
#include <mutex>
#include <utility>

#include "stratum/errors.hpp"

namespace stratum {

struct CReal::Impl {
  Approx approx;
  Seq seq;
  Modulus modulus;
  unsigned level_tag = 0;
  std::string provenance;
  std::optional<unsigned> precision_cap;

  mutable std::mutex mu;
  mutable std::map<unsigned, Rational> approx_cache;
};

CReal::CReal() { *this = from_rational(Rational(0)); }

CReal CReal::make(Approx approx, Seq seq, Modulus modulus, unsigned level_tag,
                  std::string provenance, std::optional<unsigned> precision_cap) {
  auto impl = std::make_shared<Impl>();
  impl->approx = std::move(approx);
  impl->seq = std::move(seq);
  impl->modulus = std::move(modulus);
  impl->level_tag = level_tag;
  impl->provenance = std::move(provenance);
  impl->precision_cap = precision_cap;
  return CReal(std::move(impl));
}

CReal CReal::from_approx(Approx approx, unsigned level_tag, std::string provenance,
                         std::optional<unsigned> precision_cap) {
  Approx a = approx;
  return make(
      a, [approx](std::uint64_t j) { return approx(static_cast<unsigned>(j)); },
      [](unsigned n) { return std::uint64_t{n} + 1; }, level_tag, std::move(provenance),
      precision_cap);
}

Rational CReal::approximant(unsigned n) const {
  if (impl_->precision_cap && n > *impl_->precision_cap)
    throw PrecisionCapExceeded(impl_->provenance, n, *impl_->precision_cap);
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->approx_cache.find(n);
    if (it != impl_->approx_cache.end()) return it->second;
  }
  Rational v = impl_->approx(n);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->approx_cache.emplace(n, std::move(v)).first->second;
}

Rational CReal::seq_at(std::uint64_t j) const { return impl_->seq(j); }
std::uint64_t CReal::modulus(unsigned n) const { return impl_->modulus(n); }
unsigned CReal::level_tag() const { return impl_->level_tag; }
const std::string& CReal::provenance() const { return impl_->provenance; }
std::optional<unsigned> CReal::precision_cap() const { return impl_->precision_cap; }

namespace {

// Round q to the nearest multiple of 2^-p (ties toward +inf; any fixed rule works).
Rational round_dyadic(const Rational& q, unsigned p) {
  BigInt scaled_num = q.num() << (p + 1);  // q * 2^(p+1)
  BigInt twice = scaled_num / q.den();
  BigInt units = (twice + 1) / 2;  // nearest 2^-p multiple (trunc biases < 1 ulp)
  return Rational(units, BigInt(1) << p);
}

std::optional<unsigned> cap_minus(const std::optional<unsigned>& cap, unsigned k) {
  if (!cap) return std::nullopt;
  return *cap >= k ? std::optional<unsigned>(*cap - k) : std::optional<unsigned>(0);
}

std::optional<unsigned> cap_min(const std::optional<unsigned>& a,
                                const std::optional<unsigned>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

CReal from_rational(const Rational& q) {
  return CReal::make([q](unsigned) { return q; }, [q](std::uint64_t) { return q; },
                     [](unsigned) { return std::uint64_t{0}; }, 0,
                     "rational " + q.to_string());
}

CReal add(const CReal& r, const CReal& s) {
  auto cap = cap_minus(cap_min(r.precision_cap(), s.precision_cap()), 1);
  return CReal::make(
      [r, s](unsigned n) { return r.approximant(n + 1) + s.approximant(n + 1); },
      [r, s](std::uint64_t j) { return r.seq_at(j) + s.seq_at(j); },
      [r, s](unsigned n) { return std::max(r.modulus(n + 1), s.modulus(n + 1)); },
      std::max(r.level_tag(), s.level_tag()),
      "add(" + r.provenance() + "," + s.provenance() + ")", cap);
}

CReal negate(const CReal& r) {
  return CReal::make([r](unsigned n) { return -r.approximant(n); },
                     [r](std::uint64_t j) { return -r.seq_at(j); },
                     [r](unsigned n) { return r.modulus(n); }, r.level_tag(),
                     "neg(" + r.provenance() + ")", r.precision_cap());
}

CReal sub(const CReal& r, const CReal& s) { return add(r, negate(s)); }

CReal mul(const CReal& r, const CReal& s) {
  // Shifts from the magnitude bounds B = |approximant(0)| + 1; B bounds the
  // true value, B+1 bounds every approximant at precision >= 0.
  Rational br = r.approximant(0).abs() + Rational(1);
  Rational bs = s.approximant(0).abs() + Rational(1);
  unsigned shift_r = 1 + ceil_log2(bs + Rational(1));
  unsigned shift_s = 1 + ceil_log2(br + Rational(1));
  auto cap = cap_min(cap_minus(r.precision_cap(), shift_r),
                     cap_minus(s.precision_cap(), shift_s));
  return CReal::make(
      [r, s, shift_r, shift_s](unsigned n) {
        return r.approximant(n + shift_r) * s.approximant(n + shift_s);
      },
      [r, s](std::uint64_t j) { return r.seq_at(j) * s.seq_at(j); },
      [r, s, shift_r, shift_s](unsigned n) {
        std::uint64_t m = std::max(r.modulus(n + shift_r), s.modulus(n + shift_s));
        return std::max({m, r.modulus(0), s.modulus(0)});
      },
      std::max(r.level_tag(), s.level_tag()),
      "mul(" + r.provenance() + "," + s.provenance() + ")", cap);
}

CReal sqrt2() {
  // Heron iterates rounded to dyadic rationals so denominators stay bounded;
  // the rounding grain 2^-(2^k+2) is absorbed by the quadratic convergence:
  // |y_k - sqrt(2)| <= 2^-2^k for k >= 1 still holds (grain capped at 2^-8194,
  // which bounds usable precision well past desk scale).
  constexpr unsigned kMaxGrainBits = 8192;
  auto iterate = [](std::uint64_t k) {
    Rational y(3, 2);
    for (std::uint64_t i = 1; i <= k; ++i) {
      Rational next = (y + Rational(2) / y) / Rational(2);
      unsigned grain =
          static_cast<unsigned>(std::min<std::uint64_t>(kMaxGrainBits, 1ULL << std::min<std::uint64_t>(i, 13))) + 2;
      y = round_dyadic(next, grain);
    }
    return y;
  };
  auto modulus = [](unsigned n) {
    std::uint64_t k = 1;
    while ((std::uint64_t{1} << k) < std::uint64_t{n} + 1) ++k;
    return k;
  };
  return CReal::make(
      [iterate, modulus](unsigned n) { return iterate(modulus(n)); }, iterate, modulus, 1,
      "heron", 8190);
}

CReal pi_leibniz() {
  // Dyadic fixed-point partial sums: scale 2^(bitlen(j)+40) keeps the total
  // truncation error below 2^-40 across j terms.
  auto partial = [](std::uint64_t j) {
    unsigned p = 40;
    for (std::uint64_t t = j; t > 0; t >>= 1) ++p;
    BigInt unit = BigInt(4) << p;
    BigInt acc = 0;
    for (std::uint64_t k = 0; k < j; ++k) {
      BigInt term = unit / (2 * k + 1);
      acc += (k % 2 == 0) ? term : -term;
    }
    return Rational(acc, BigInt(1) << p);
  };
  auto modulus = [](unsigned n) { return std::uint64_t{1} << (n + 2); };
  return CReal::make([partial, modulus](unsigned n) { return partial(modulus(n)); },
                     partial, modulus, 1, "leibniz-series+alt-tail-modulus", 17);
}

namespace {

// Exact rational partial sum of arctan(1/x): sum_{k<terms} (-1)^k / ((2k+1) x^(2k+1)).
Rational arctan_inv_partial(unsigned x, std::uint64_t terms) {
  Rational acc(0);
  BigInt xpow = x;  // x^(2k+1)
  for (std::uint64_t k = 0; k < terms; ++k) {
    Rational term(1, BigInt(2 * k + 1) * xpow);
    acc = (k % 2 == 0) ? acc + term : acc - term;
    xpow *= BigInt(x) * x;
  }
  return acc;
}

// Alternating tail of the combined Machin formula after N terms per series.
Rational machin_tail(std::uint64_t n_terms) {
  BigInt five_pow = 1, big_pow = 1;
  for (std::uint64_t k = 0; k < 2 * n_terms + 1; ++k) {
    five_pow *= 5;
    big_pow *= 239;
  }
  BigInt odd = 2 * n_terms + 1;
  return Rational(16, odd * five_pow) + Rational(4, odd * big_pow);
}

}  // namespace

CReal pi_machin() {
  auto partial = [](std::uint64_t j) {
    return Rational(16) * arctan_inv_partial(5, j) -
           Rational(4) * arctan_inv_partial(239, j);
  };
  auto modulus = [](unsigned n) {
    std::uint64_t terms = 1;
    Rational bound = Rational::pow2(-static_cast<long>(n));
    while (machin_tail(terms) > bound) ++terms;
    return terms;
  };
  return CReal::make([partial, modulus](unsigned n) { return partial(modulus(n)); },
                     partial, modulus, 1, "machin-arctan+geom-tail-modulus");
}

CReal e_series() {
  auto partial = [](std::uint64_t j) {
    Rational acc(0);
    BigInt fact = 1;
    for (std::uint64_t k = 0; k <= j; ++k) {
      if (k > 0) fact *= k;
      acc += Rational(1, fact);
    }
    return acc;
  };
  auto modulus = [](unsigned n) {
    // least N with 2/(N+1)! <= 2^-n
    BigInt fact = 1;  // (N+1)! as N advances
    std::uint64_t N = 0;
    BigInt need = BigInt(2) << n;  // need (N+1)! >= 2^(n+1)
    for (;;) {
      fact *= (N + 1);
      if (fact >= need) return N;
      ++N;
    }
  };
  return CReal::make([partial, modulus](unsigned n) { return partial(modulus(n)); },
                     partial, modulus, 1, "factorial-series+tail-modulus");
}

CReal sin_taylor(const CReal& x) {
  if (x.approximant(1).abs() > Rational(1))
    throw DomainViolation(
        "sin_taylor: requires |x.approximant(1)| <= 1 (domain |x| <= 3/2)");
  auto cap = cap_minus(x.precision_cap(), 2);
  auto approx = [x](unsigned n) {
    Rational xa = x.approximant(n + 2);
    // Tail after N alternating terms is at most 2^(2N+1)/(2N+1)! for |y| <= 2;
    // |xa| <= 3/2 + 1/4 keeps us inside that envelope.
    Rational bound = Rational::pow2(-(static_cast<long>(n) + 2));
    std::uint64_t N = 1;
    {
      BigInt fact = 6;        // (2N+1)! at N=1
      BigInt two_pow = 8;     // 2^(2N+1)
      while (Rational(two_pow, fact) > bound) {
        ++N;
        fact *= BigInt(2 * N) * (2 * N + 1);
        two_pow <<= 2;
      }
    }
    Rational acc(0);
    Rational xsq = xa * xa;
    Rational term = xa;  // x^(2j+1)/(2j+1)!
    for (std::uint64_t j = 0; j < N; ++j) {
      acc = (j % 2 == 0) ? acc + term : acc - term;
      term = term * xsq / Rational(BigInt(2 * j + 2) * (2 * j + 3), 1);
    }
    return acc;
  };
  return CReal::from_approx(approx, std::max(1u, x.level_tag()),
                            "sin(" + x.provenance() + ")", cap);
}

CReal quarter_geometric() {
  auto partial = [](std::uint64_t j) {
    if (j == 0) return Rational(0);
    BigInt four_pow = BigInt(1) << (2 * j);  // 4^j
    // sum_{k<j} 4^-k = (4^j - 1) * 4 / (3 * 4^j)
    return Rational((four_pow - 1) * 4, four_pow * 3);
  };
  auto modulus = [](unsigned n) { return (std::uint64_t{n} + 2) / 2; };
  return CReal::make([partial, modulus](unsigned n) { return partial(modulus(n)); },
                     partial, modulus, 1, "geometric-series-2^-2k");
}

std::string to_decimal(const CReal& r, unsigned k) {
  if (k < 1) throw InvalidInput("to_decimal: digit count must be >= 1");
  // least n with 2^-n <= 10^-(k+1); 10^(k+1) is never a power of two
  BigInt target = pow10(k + 1);
  unsigned n = boost::multiprecision::msb(target) + 1;
  Rational a = r.approximant(n);
  BigInt t = a.scaled_trunc_pow10(k);
  bool neg = t < 0;
  if (neg) t = -t;
  std::string digits = t.str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
  return neg ? "-" + out : out;
}

Cmp cmp_at(const CReal& r, const CReal& s, unsigned n) {
  Rational d = r.approximant(n + 2) - s.approximant(n + 2);
  if (d.abs() > Rational::pow2(-static_cast<long>(n)))
    return d.sign() > 0 ? Cmp::greater : Cmp::less;
  return Cmp::indistinguishable;
}

CReal perturb(const CReal& r, const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidInput("perturb: eps must be > 0");
  Rational delta = eps / Rational(4);
  CReal shifted = add(r, from_rational(delta));
  return CReal::make([shifted](unsigned n) { return shifted.approximant(n); },
                     [shifted](std::uint64_t j) { return shifted.seq_at(j); },
                     [shifted](unsigned n) { return shifted.modulus(n); }, r.level_tag(),
                     "perturb(" + r.provenance() + ",+" + delta.to_string() + ")",
                     shifted.precision_cap());
}

}  // namespace stratum
