#include "stratum/encoding.hpp"

namespace stratum {

BigInt cantor_pair(const BigInt& x, const BigInt& y) {
  BigInt s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z) {
  // s = floor((sqrt(8z+1)-1)/2), then y = z - s(s+1)/2, x = s - y.
  BigInt s = (isqrt(8 * z + 1) - 1) / 2;
  BigInt t = s * (s + 1) / 2;
  BigInt y = z - t;
  BigInt x = s - y;
  return {x, y};
}

BigInt encode_list(const std::vector<BigInt>& xs) {
  BigInt code = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    code = 1 + cantor_pair(*it, code);
  return code;
}

std::vector<BigInt> decode_list(const BigInt& code) {
  std::vector<BigInt> out;
  BigInt rest = code;
  while (rest != 0) {
    auto [head, tail] = cantor_unpair(rest - 1);
    out.push_back(head);
    rest = tail;  // strictly smaller: pair(h,t) >= t and we subtracted 1
  }
  return out;
}

}  // namespace stratum
