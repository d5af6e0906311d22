#include <doctest.h>

#include <algorithm>
#include <set>

#include "stratum/machine.hpp"
#include "stratum/omega.hpp"

using stratum::PrefixMachine;
using stratum::Rational;

TEST_CASE("self-delimiting decoding") {
  CHECK(stratum::decode_program_bits("0").has_value());    // index 0: empty program
  CHECK(stratum::decode_program_bits("100").has_value());  // index 1: single HALT
  CHECK(stratum::decode_program_bits("0")->empty());
  CHECK(stratum::decode_program_bits("100")->size() == 1);
  CHECK_FALSE(stratum::decode_program_bits("").has_value());
  CHECK_FALSE(stratum::decode_program_bits("1").has_value());
  CHECK_FALSE(stratum::decode_program_bits("10").has_value());   // payload too short
  CHECK_FALSE(stratum::decode_program_bits("1011").has_value()); // length mismatch
}

TEST_CASE("prefix-freeness is exhaustive up to max_len") {
  PrefixMachine m{12};
  auto programs = stratum::enumerate_valid_programs(m);
  CHECK(programs.size() == 63);  // sum of 2^k for 2k+1 <= 12
  std::set<std::string> unique(programs.begin(), programs.end());
  CHECK(unique.size() == programs.size());
  for (const auto& a : programs)
    for (const auto& b : programs)
      if (a != b && a.size() < b.size()) CHECK(b.compare(0, a.size(), a) != 0);
  // every valid string decodes
  for (const auto& bits : programs) CHECK(stratum::decode_program_bits(bits).has_value());
}

TEST_CASE("kraft sum") {
  CHECK(stratum::kraft_sum(PrefixMachine{12}) == Rational(63, 64));
  CHECK(stratum::kraft_sum(PrefixMachine{16}) == Rational(255, 256));
  CHECK(stratum::kraft_sum(PrefixMachine{12}) < Rational(1));
}

TEST_CASE("enumerate_halting") {
  PrefixMachine m{12};
  CHECK(stratum::enumerate_halting(m, 0).empty());

  // the one-instruction HALT program (string "100") halts in one step
  auto h1 = stratum::enumerate_halting(m, 1);
  CHECK(std::find(h1.begin(), h1.end(), "100") != h1.end());
  CHECK(std::find(h1.begin(), h1.end(), "0") != h1.end());  // empty program too

  // monotone in the step bound
  std::vector<std::string> prev;
  for (std::uint64_t n : {0, 1, 2, 4, 8, 16, 64, 256}) {
    auto h = stratum::enumerate_halting(m, n);
    CHECK(std::includes(h.begin(), h.end(), prev.begin(), prev.end()));
    prev = h;
  }
}

TEST_CASE("omega_n is monotone and below the kraft bound") {
  PrefixMachine m{12};
  CHECK(stratum::omega_n(m, 0).value == Rational(0));
  Rational prev(0);
  for (std::uint64_t n = 0; n <= 256; n += 8) {
    auto approx = stratum::omega_n(m, n);
    CHECK(approx.value >= prev);
    CHECK(approx.value < Rational(1));
    CHECK(approx.value <= stratum::kraft_sum(m));
    prev = approx.value;
  }
}

TEST_CASE("trace rows") {
  PrefixMachine m{12};
  auto rows = stratum::omega_trace(m, 64);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0].n == 0);
  CHECK(rows[0].value == Rational(0));
  CHECK(rows[0].halted_count == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].value >= rows[i - 1].value);
    CHECK(rows[i].halted_count >= rows[i - 1].halted_count);
  }
  CHECK(rows.back().value < Rational(1));

  // the trace agrees with pointwise omega_n
  for (std::uint64_t n : {0, 1, 7, 32, 64})
    CHECK(rows[n].value == stratum::omega_n(m, n).value);
}

TEST_CASE("csv format") {
  PrefixMachine m{12};
  auto csv = stratum::omega_trace_csv(stratum::omega_trace(m, 2));
  CHECK(csv.rfind("n,omega_num,omega_den,halted_count\n0,0,1,0\n", 0) == 0);
}

TEST_CASE("stabilization at max_len 12") {
  PrefixMachine m{12};
  auto at_4096 = stratum::omega_n(m, 4096);
  auto at_8192 = stratum::omega_n(m, 8192);
  CHECK(at_4096.value == at_8192.value);
  CHECK(at_4096.halted.size() == at_8192.halted.size());
  // golden value, frozen from exhaustive enumeration (see acceptance suite)
  CHECK(at_4096.value == Rational(1961, 2048));
  CHECK(at_4096.halted.size() == 50);
}

TEST_CASE("traces are deterministic") {
  PrefixMachine m{10};
  auto a = stratum::omega_trace(m, 128);
  auto b = stratum::omega_trace(m, 128);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].halted_count == b[i].halted_count);
  }
}

TEST_CASE("omega as a stage-indexed lower approximation") {
  auto lower = stratum::omega_lower_approximation(PrefixMachine{12});
  CHECK(lower.stage_approximant(0) == Rational(0));
  CHECK(lower.stage_approximant(64) <= lower.stage_approximant(128));
  CHECK(lower.description() == "omega-lower(max_len=12)");
}
