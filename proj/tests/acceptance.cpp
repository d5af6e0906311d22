// Acceptance suite: one case per criterion, each printing a PASS/FAIL line.
// Expected values come from the independent oracles in oracles.hpp, never
// from the code paths under test.
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "oracles.hpp"
#include "stratum/chains.hpp"
#include "stratum/creal.hpp"
#include "stratum/dcomp.hpp"
#include "stratum/omega.hpp"
#include "stratum/oracle_reals.hpp"

using stratum::CReal;
using stratum::Rational;

namespace {

struct Criterion {
  int id;
  const char* name;
  bool ok = true;
  double seconds = 0;

  ~Criterion() {
    std::printf("[criterion %02d] %-28s %s (%.2fs)\n", id, name,
                ok ? "PASS" : "FAIL", seconds);
    std::fflush(stdout);
  }
};

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

#define ACC(crit, cond)        \
  do {                         \
    bool acc_ok_ = (cond);     \
    (crit).ok &= acc_ok_;      \
    CHECK(acc_ok_);            \
  } while (0)

Rational pow2(long e) { return Rational::pow2(e); }

}  // namespace

TEST_CASE("criterion 1: digit correctness against independent oracles") {
  Criterion crit{1, "digit-correctness"};
  Stopwatch total;

  {
    Stopwatch t;
    ACC(crit, stratum::to_decimal(stratum::sqrt2(), 30) == oracles::sqrt_digits(2, 30));
    ACC(crit, t.elapsed() < 1.0);
  }
  {
    Stopwatch t;
    auto expected = oracles::certified_truncation(oracles::e_enclosure(45), 30);
    REQUIRE(expected.has_value());
    ACC(crit, stratum::to_decimal(stratum::e_series(), 30) == *expected);
    ACC(crit, t.elapsed() < 1.0);
  }
  {
    Stopwatch t;
    auto expected = oracles::certified_truncation(oracles::pi_enclosure(60), 30);
    REQUIRE(expected.has_value());
    ACC(crit, stratum::to_decimal(stratum::pi_machin(), 30) == *expected);
    ACC(crit, t.elapsed() < 1.0);
  }
  crit.seconds = total.elapsed();
}

TEST_CASE("criterion 2: the noncollapse constant evaluates to 4/3") {
  Criterion crit{2, "paper-constant-4/3"};
  Stopwatch t;
  CReal r = stratum::quarter_geometric();
  for (unsigned n = 0; n <= 40; ++n)
    ACC(crit, (r.approximant(n) - Rational(4, 3)).abs() <= pow2(-static_cast<long>(n)));
  crit.seconds = t.elapsed();
  ACC(crit, crit.seconds < 0.1);
}

TEST_CASE("criterion 3: sin(sqrt2/6) composition to 20 faithful digits") {
  Criterion crit{3, "composition-sin"};
  Stopwatch t;
  CReal s = stratum::sin_taylor(
      stratum::mul(stratum::sqrt2(), stratum::from_rational(Rational(1, 6))));
  auto enclosure = oracles::sin_enclosure(oracles::sqrt2_over_6_enclosure(45), 20);
  auto expected = oracles::certified_truncation(enclosure, 20);
  REQUIRE(expected.has_value());
  ACC(crit, stratum::to_decimal(s, 20) == *expected);
  crit.seconds = t.elapsed();
}

TEST_CASE("criterion 4: 10000 Cauchy-contract probes over the catalog") {
  Criterion crit{4, "cauchy-property-suite"};
  Stopwatch t;
  struct Probe {
    const char* name;
    CReal real;
    unsigned max_n;
  };
  std::vector<Probe> catalog = {
      {"one", stratum::from_rational(Rational(1)), 24},
      {"three_quarters", stratum::from_rational(Rational(3, 4)), 24},
      {"r_4_3", stratum::quarter_geometric(), 24},
      {"sqrt2", stratum::sqrt2(), 24},
      {"pi", stratum::pi_machin(), 24},
      {"e", stratum::e_series(), 24},
      {"sin_sqrt2_over_6",
       stratum::sin_taylor(stratum::mul(stratum::sqrt2(),
                                        stratum::from_rational(Rational(1, 6)))),
       24},
      {"evens_sum", stratum::sum_real_decidable(stratum::make_evens_program()), 24},
  };
  std::mt19937_64 rng(2024);
  for (int probe = 0; probe < 10000; ++probe) {
    const auto& entry = catalog[rng() % catalog.size()];
    unsigned n = rng() % (entry.max_n + 1);
    std::uint64_t m = entry.real.modulus(n);
    std::uint64_t j = m + rng() % 17;
    std::uint64_t k = m + rng() % 17;
    Rational gap = (entry.real.seq_at(j) - entry.real.seq_at(k)).abs();
    if (!(gap <= pow2(-static_cast<long>(n)))) {
      CAPTURE(entry.name);
      CAPTURE(n);
      ACC(crit, false);
    }
  }
  crit.seconds = t.elapsed();
  ACC(crit, crit.seconds < 30.0);
}

TEST_CASE("criterion 5: Cantor encode/decode roundtrip") {
  Criterion crit{5, "cantor-roundtrip"};
  Stopwatch t;
  std::mt19937_64 rng(4096);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::uint64_t> prefix;
    std::uint64_t next = rng() % 4;
    unsigned len = rng() % 65;
    for (unsigned i = 0; i < len; ++i) {
      prefix.push_back(next);
      next += 1 + rng() % 4;
    }
    auto decoded = stratum::decode_bits_to_set(stratum::encode_set_to_bits(prefix));
    if (prefix.size() < 3) {
      ACC(crit, decoded.insufficient_evidence);
      ACC(crit, decoded.elements.empty());
    } else {
      std::vector<std::uint64_t> certified(prefix.begin(), prefix.end() - 2);
      ACC(crit, decoded.elements == certified);
    }
  }
  // all-zero prefixes are never decoded into a wrong set
  for (unsigned len : {1u, 8u, 64u}) {
    auto zeros = stratum::decode_bits_to_set(
        stratum::ChainCode::from_string01(std::string(len, '0')));
    ACC(crit, zeros.insufficient_evidence);
    ACC(crit, zeros.elements.empty());
  }
  crit.seconds = t.elapsed();
}

namespace {

stratum::Chain random_admissible_chain(std::mt19937_64& rng, unsigned levels) {
  std::vector<stratum::ToySystem> systems;
  stratum::ToySystem sys;
  if (rng() % 2) sys.rules.insert(stratum::Rule::RationalClosure);
  for (unsigned i = 0; i <= levels; ++i) {
    if (i > 0)
      sys.grants.insert("tok_" + std::to_string(rng()) + "_" + std::to_string(i));
    systems.push_back(sys);
  }
  return stratum::Chain::explicit_prefix(std::move(systems));
}

}  // namespace

TEST_CASE("criterion 6: collapse laws and the noncollapse counterexample") {
  Criterion crit{6, "collapse-laws"};
  Stopwatch t;
  std::mt19937_64 rng(1729);
  std::vector<stratum::Chain> pool;
  for (int trial = 0; trial < 100; ++trial) {
    unsigned levels = 1 + rng() % 5;
    auto chain = random_admissible_chain(rng, levels);
    ACC(crit, stratum::is_admissible_prefix(chain, levels, 6).admissible);
    for (unsigned n = 0; n <= levels; ++n)
      ACC(crit,
          stratum::cumulative_set(chain, n, 6) == stratum::level_set(chain, n, 6));
    if (levels >= 2) pool.push_back(chain);
  }
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<stratum::Chain> family;
    unsigned members = 1 + rng() % 8;
    for (unsigned i = 0; i < members; ++i) family.push_back(pool[rng() % pool.size()]);
    for (unsigned n = 0; n <= 2; ++n)
      ACC(crit, stratum::global_cumulative(family, n, 6) ==
                    stratum::global_level(family, n, 6));
  }
  auto report = stratum::counterexample_noncollapse(6);
  ACC(crit, report.all_conditions_hold());
  ACC(crit, report.in_global_cumulative);
  ACC(crit, report.absent_from_global_level);
  ACC(crit, report.c1_nonadmissible_at_0);
  crit.seconds = t.elapsed();
}

TEST_CASE("criterion 7: omega chain stabilizes to the exhaustive golden value") {
  Criterion crit{7, "omega-chain"};
  Stopwatch t;
  stratum::PrefixMachine machine{12};

  // independent route: walk every bit-string of length <= 12, keep the
  // self-delimiting ones, and sum halting weights directly
  Rational independent_omega(0);
  Rational independent_kraft(0);
  unsigned valid = 0, halted = 0;
  for (unsigned len = 1; len <= 12; ++len) {
    for (std::uint64_t word = 0; word < (std::uint64_t{1} << len); ++word) {
      std::string bits;
      for (unsigned b = 0; b < len; ++b)
        bits += ((word >> (len - 1 - b)) & 1) ? '1' : '0';
      unsigned k = 0;
      while (k < bits.size() && bits[k] == '1') ++k;
      if (k >= bits.size() || bits.size() != 2 * k + 1) continue;  // not valid
      ++valid;
      independent_kraft += Rational(1, stratum::BigInt(1) << len);
      std::uint64_t payload = 0;
      for (unsigned b = k + 1; b < bits.size(); ++b)
        payload = payload * 2 + (bits[b] == '1');
      stratum::Program p = stratum::program_from_index(
          stratum::BigInt((std::uint64_t{1} << k) - 1 + payload));
      if (stratum::run_bounded(p, 0, 4096).halted) {
        ++halted;
        independent_omega += Rational(1, stratum::BigInt(1) << len);
      }
    }
  }
  ACC(crit, valid == 63);
  ACC(crit, independent_kraft == stratum::kraft_sum(machine));
  ACC(crit, independent_kraft <= Rational(1));

  auto rows = stratum::omega_trace(machine, 4096);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].value >= rows[i - 1].value) ||
        !(rows[i].halted_count >= rows[i - 1].halted_count)) {
      ACC(crit, false);
      break;
    }
  }
  ACC(crit, rows.back().value < Rational(1));
  ACC(crit, rows.back().value == independent_omega);
  ACC(crit, rows.back().halted_count == halted);
  // frozen golden from the exhaustive enumeration
  ACC(crit, rows.back().value == Rational(1961, 2048));
  ACC(crit, stratum::omega_n(machine, 8192).value == rows.back().value);
  crit.seconds = t.elapsed();
  ACC(crit, crit.seconds < 10.0);
}

TEST_CASE("criterion 8: specker/witness coherence to stage 512") {
  Criterion crit{8, "specker-witness"};
  Stopwatch t;
  auto sp = stratum::specker();
  auto w1 = stratum::witness_real(1);
  Rational prev(0);
  for (std::uint64_t s = 0; s <= 512; ++s) {
    Rational v = sp.stage_approximant(s);
    if (!(v >= prev && v <= Rational(1))) {
      ACC(crit, false);
      break;
    }
    Rational bound = (s == 0) ? Rational(0)
                              : Rational(s, stratum::BigInt(1) << s);
    if (!((v - w1.stage_approximant(s)).abs() <= bound)) {
      ACC(crit, false);
      break;
    }
    prev = v;
  }
  crit.seconds = t.elapsed();
}

TEST_CASE("criterion 9: dcomp resolution, replay and budget monotonicity") {
  Criterion crit{9, "dcomp-resolution"};
  Stopwatch t;
  for (const char* id : {"one", "three_quarters", "r_4_3"}) {
    auto r = stratum::dcomp(id);
    ACC(crit, r.level == 0);
    ACC(crit, r.status == stratum::DStatus::exact);
  }
  for (const char* id : {"sqrt2", "pi", "e", "sin_sqrt2_over_6"}) {
    auto r = stratum::dcomp(id);
    ACC(crit, r.level == 1);
    ACC(crit, r.status == stratum::DStatus::exact);
    auto replayed = stratum::replay_descriptor(r.sigma);
    ACC(crit, replayed.has_value());
    auto value = stratum::Catalog::standard().find(id)->constructor();
    Rational diff = std::get<CReal>(*replayed).approximant(22) -
                    std::get<CReal>(value).approximant(22);
    ACC(crit, diff.abs() <= pow2(-20));
  }
  for (const char* id : {"witness_real_1", "specker_limit", "witness_real_2"}) {
    auto r = stratum::dcomp(id);
    ACC(crit, r.status == stratum::DStatus::upper_bound);
    ACC(crit, r.level >= 2);
    ACC(crit, r.budget_used >= 2 * stratum::kDefaultBudget);  // certified exhaustion
  }
  for (const char* id : {"sqrt2", "pi", "witness_real_1"}) {
    unsigned prev = stratum::kLadderLevels + 1;
    for (std::uint64_t budget : {25000ULL, 50000ULL, 100000ULL, 200000ULL}) {
      auto r = stratum::dcomp(id, budget);
      unsigned level = r.resolved() ? r.level : stratum::kLadderLevels;
      ACC(crit, level <= prev);
      prev = level;
    }
  }
  crit.seconds = t.elapsed();
}

TEST_CASE("criterion 10: injectivity of decidable summation reals") {
  Criterion crit{10, "sum-real-injectivity"};
  Stopwatch t;
  std::mt19937_64 rng(512);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t mask_x = static_cast<std::uint32_t>(rng() & 0xFFFF);
    std::uint32_t mask_y = static_cast<std::uint32_t>(rng() & 0xFFFF);
    if (mask_x == mask_y) mask_y ^= 1u << (rng() % 16);
    std::vector<std::uint64_t> xs, ys;
    for (std::uint64_t k = 0; k < 16; ++k) {
      if (mask_x & (1u << k)) xs.push_back(k);
      if (mask_y & (1u << k)) ys.push_back(k);
    }
    CReal rx = stratum::sum_real_decidable(stratum::make_finite_set_program(xs));
    CReal ry = stratum::sum_real_decidable(stratum::make_finite_set_program(ys));
    if (stratum::cmp_at(rx, ry, 19) == stratum::Cmp::indistinguishable) {
      CAPTURE(mask_x);
      CAPTURE(mask_y);
      ACC(crit, false);
    }
  }
  crit.seconds = t.elapsed();
}
