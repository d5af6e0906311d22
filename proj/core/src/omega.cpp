#include "stratum/omega.hpp"

#include <algorithm>
#include <sstream>

namespace stratum {

std::optional<Program> decode_program_bits(std::string_view bits) {
  std::size_t k = 0;
  while (k < bits.size() && bits[k] == '1') ++k;
  if (k >= bits.size() || bits[k] != '0') return std::nullopt;
  if (bits.size() != 2 * k + 1) return std::nullopt;
  BigInt index = (BigInt(1) << k) - 1;
  BigInt payload = 0;
  for (std::size_t i = k + 1; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') return std::nullopt;
    payload = payload * 2 + (bits[i] == '1' ? 1 : 0);
  }
  return program_from_index(index + payload);
}

std::vector<std::string> enumerate_valid_programs(const PrefixMachine& m) {
  std::vector<std::string> out;
  for (unsigned k = 0; 2 * k + 1 <= m.max_len; ++k) {
    for (std::uint64_t payload = 0; payload < (std::uint64_t{1} << k); ++payload) {
      std::string s(k, '1');
      s += '0';
      for (unsigned b = 0; b < k; ++b)
        s += ((payload >> (k - 1 - b)) & 1) ? '1' : '0';
      out.push_back(std::move(s));
    }
  }
  return out;  // generated in (length, bits) order already
}

Rational kraft_sum(const PrefixMachine& m) {
  Rational acc(0);
  for (unsigned k = 0; 2 * k + 1 <= m.max_len; ++k)
    acc += Rational(BigInt(1) << k, BigInt(1) << (2 * k + 1));
  return acc;
}

namespace {

// First step count at which each valid program halts on empty input, capped.
std::vector<std::pair<std::string, std::uint64_t>> halting_times(
    const PrefixMachine& m, std::uint64_t step_cap) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  for (auto& bits : enumerate_valid_programs(m)) {
    auto program = decode_program_bits(bits);
    RunResult r = run_bounded(*program, 0, step_cap);
    out.emplace_back(bits, r.halted ? r.steps_used : UINT64_MAX);
  }
  return out;
}

Rational weight(const std::string& bits) {
  return Rational(1, BigInt(1) << bits.size());
}

}  // namespace

std::vector<std::string> enumerate_halting(const PrefixMachine& m, std::uint64_t n) {
  std::vector<std::string> out;
  for (auto& [bits, t] : halting_times(m, n == 0 ? 1 : n))
    if (t != UINT64_MAX && t <= n) out.push_back(bits);
  return out;
}

OmegaApprox omega_n(const PrefixMachine& m, std::uint64_t n) {
  OmegaApprox approx;
  approx.n = n;
  approx.halted = enumerate_halting(m, n);
  approx.value = Rational(0);
  for (const auto& bits : approx.halted) approx.value += weight(bits);
  return approx;
}

std::vector<OmegaTraceRow> omega_trace(const PrefixMachine& m, std::uint64_t n_max) {
  auto times = halting_times(m, n_max == 0 ? 1 : n_max);
  std::vector<OmegaTraceRow> rows;
  rows.reserve(n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    OmegaTraceRow row;
    row.n = n;
    Rational acc(0);
    std::uint64_t count = 0;
    for (auto& [bits, t] : times) {
      if (t != UINT64_MAX && t <= n) {
        acc += weight(bits);
        ++count;
      }
    }
    row.value = acc;
    row.halted_count = count;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string omega_trace_csv(const std::vector<OmegaTraceRow>& rows) {
  std::ostringstream out;
  out << "n,omega_num,omega_den,halted_count\n";
  for (const auto& row : rows)
    out << row.n << ',' << row.value.num().str() << ',' << row.value.den().str() << ','
        << row.halted_count << '\n';
  return out.str();
}

OracleReal omega_lower_approximation(const PrefixMachine& m) {
  return OracleReal::make(
      [m](std::uint64_t s) { return omega_n(m, s).value; }, 1,
      "omega-lower(max_len=" + std::to_string(m.max_len) + ")");
}

}  // namespace stratum
