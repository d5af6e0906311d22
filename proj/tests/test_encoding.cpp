#include <doctest.h>

#include <random>

#include "stratum/encoding.hpp"

using stratum::BigInt;

TEST_CASE("cantor pairing basics") {
  CHECK(stratum::cantor_pair(0, 0) == 0);
  CHECK(stratum::cantor_pair(1, 0) == 1);
  CHECK(stratum::cantor_pair(0, 1) == 2);
  CHECK(stratum::cantor_pair(1, 1) == 4);
}

TEST_CASE("cantor pairing is bijective") {
  // forward then back on random pairs
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    BigInt x = rng() % 100000;
    BigInt y = rng() % 100000;
    auto [bx, by] = stratum::cantor_unpair(stratum::cantor_pair(x, y));
    CHECK(bx == x);
    CHECK(by == y);
  }
  // back then forward on an initial segment
  for (int z = 0; z < 5000; ++z) {
    auto [x, y] = stratum::cantor_unpair(BigInt(z));
    CHECK(stratum::cantor_pair(x, y) == z);
  }
}

TEST_CASE("list codes") {
  CHECK(stratum::encode_list({}) == 0);
  CHECK(stratum::decode_list(BigInt(0)).empty());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::vector<BigInt> xs;
    unsigned len = rng() % 6;
    for (unsigned j = 0; j < len; ++j) xs.push_back(BigInt(rng() % 50));
    CHECK(stratum::decode_list(stratum::encode_list(xs)) == xs);
  }
  for (int n = 0; n < 5000; ++n)
    CHECK(stratum::encode_list(stratum::decode_list(BigInt(n))) == n);
}
