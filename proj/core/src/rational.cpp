#include "stratum/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include "stratum/errors.hpp"

namespace stratum {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw InvalidInput("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::pow2(long exp) {
  if (exp >= 0) return Rational(BigInt(1) << exp, 1);
  return Rational(1, BigInt(1) << (-exp));
}

std::optional<Rational> Rational::parse(std::string_view text) {
  auto parse_digits = [](std::string_view s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    if (s.size() > 1 && s[0] == '0') return std::nullopt;  // no leading zeros
    BigInt v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  };

  bool neg = !text.empty() && text[0] == '-';
  if (neg) text.remove_prefix(1);
  auto slash = text.find('/');
  std::optional<BigInt> num, den;
  if (slash == std::string_view::npos) {
    num = parse_digits(text);
    den = BigInt(1);
  } else {
    num = parse_digits(text.substr(0, slash));
    den = parse_digits(text.substr(slash + 1));
    if (den && *den <= 1) return std::nullopt;  // "p/1" and "p/0" not canonical
  }
  if (!num || !den) return std::nullopt;
  if (neg && *num == 0) return std::nullopt;  // "-0"
  if (slash != std::string_view::npos &&
      boost::multiprecision::gcd(*num, *den) != 1)
    return std::nullopt;  // not reduced
  return Rational(neg ? BigInt(-*num) : *num, *den);
}

Rational Rational::abs() const {
  Rational r = *this;
  if (r.num_ < 0) r.num_ = -r.num_;
  return r;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw InvalidInput("Rational: division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  BigInt lhs = num_ * o.den_;
  BigInt rhs = o.num_ * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

BigInt Rational::scaled_trunc_pow10(unsigned k) const {
  BigInt scaled = num_ * pow10(k);
  return scaled / den_;  // cpp_int division truncates toward zero
}

unsigned ceil_log2(const Rational& x) {
  if (x.sign() <= 0) throw InvalidInput("ceil_log2: argument must be positive");
  // least c with num <= den * 2^c
  unsigned c = 0;
  BigInt shifted = x.den();
  while (shifted < x.num()) {
    shifted <<= 1;
    ++c;
  }
  return c;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InvalidInput("isqrt: negative argument");
  if (n < 2) return n;
  BigInt x = BigInt(1) << (boost::multiprecision::msb(n) / 2 + 1);
  for (;;) {
    BigInt y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace stratum
