#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stratum {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always normalized: den > 0, gcd(|num|, den) = 1.
// Backed by boost::multiprecision integers; this wrapper pins the canonical
// text form ("p/q", integers without "/1") and the dyadic helpers the rest of
// the library leans on.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt num, BigInt den);

  // 2^exp for any (possibly negative) exponent.
  static Rational pow2(long exp);

  // Parses canonical form only: optional '-', digits, optional '/digits'.
  // Returns nullopt for anything non-canonical ("+1", "2/4", "1/-2", "03").
  static std::optional<Rational> parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }
  Rational abs() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws InvalidInput on /0
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rational& o) const;

  // Canonical text: "4/3", "-1/2", "7".
  std::string to_string() const;

  // floor(x * 10^k) as an integer; used by faithful decimal truncation.
  BigInt scaled_trunc_pow10(unsigned k) const;

 private:
  void normalize();
  BigInt num_;
  BigInt den_;
};

// Least c >= 0 with 2^c >= x. Requires x > 0.
unsigned ceil_log2(const Rational& x);

// Floor of the integer square root (Newton), total for n >= 0.
BigInt isqrt(const BigInt& n);

// 10^k as BigInt.
BigInt pow10(unsigned k);

}  // namespace stratum
