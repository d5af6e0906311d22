#pragma once

#include <cstdint>
#include <vector>

#include "stratum/rational.hpp"

namespace stratum {

// Total bijections used for Goedel-style numbering: Cantor pairing N^2 <-> N
// and a cons-cell list code List(N) <-> N built on top of it. Every natural
// decodes to exactly one object and vice versa.

BigInt cantor_pair(const BigInt& x, const BigInt& y);
std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z);

// encode([]) = 0, encode(h:t) = 1 + pair(h, encode(t)).
BigInt encode_list(const std::vector<BigInt>& xs);
std::vector<BigInt> decode_list(const BigInt& code);

}  // namespace stratum
