#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stratum/machine.hpp"
#include "stratum/oracle_reals.hpp"
#include "stratum/rational.hpp"

namespace stratum {

// Toy prefix-free universal machine. Valid program bit-strings are
// self-delimiting: a unary length prefix 1^k 0 followed by exactly k payload
// bits, total length 2k+1. No valid string is a proper prefix of another.
// The payload selects a register-machine program through the total program
// enumeration: index = (2^k - 1) + value(payload). Programs run on empty
// input (r1 = 0).
struct PrefixMachine {
  unsigned max_len = 16;
};

// The register program a valid bit-string denotes; nullopt if the string is
// not a well-formed self-delimiting code.
std::optional<Program> decode_program_bits(std::string_view bits);

// All valid program strings of length <= max_len, sorted by (length, bits).
std::vector<std::string> enumerate_valid_programs(const PrefixMachine& m);

// Exact Kraft sum over every valid program string: sum 2^-|p| = 1 - 2^-(K+1)
// for K payload sizes, always < 1.
Rational kraft_sum(const PrefixMachine& m);

// Valid programs halting on empty input within n steps; monotone in n.
std::vector<std::string> enumerate_halting(const PrefixMachine& m, std::uint64_t n);

struct OmegaApprox {
  std::uint64_t n = 0;
  std::vector<std::string> halted;  // sorted by (length, bits)
  Rational value;                   // sum over halted of 2^-|p|
};

OmegaApprox omega_n(const PrefixMachine& m, std::uint64_t n);

struct OmegaTraceRow {
  std::uint64_t n = 0;
  Rational value;
  std::uint64_t halted_count = 0;
};

// Rows for n = 0..n_max; single simulation pass per program.
std::vector<OmegaTraceRow> omega_trace(const PrefixMachine& m, std::uint64_t n_max);

// CSV: header "n,omega_num,omega_den,halted_count", exact rationals.
std::string omega_trace_csv(const std::vector<OmegaTraceRow>& rows);

// The monotone lower approximation to the halting probability, exposed in
// stage-indexed form only (it never carries a base-level modulus).
OracleReal omega_lower_approximation(const PrefixMachine& m);

}  // namespace stratum
