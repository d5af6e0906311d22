#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stratum/encoding.hpp"
#include "stratum/rational.hpp"

namespace stratum {

// Minimal register machine: unbounded natural registers, four instructions.
//   INC r          r += 1
//   JZDEC r t      if r == 0 jump to instruction t, else r -= 1
//   QRY r          r = oracle member(r) ? 1 : 0
//   HALT           stop
// Convention: input arrives in r1, the result is read from r0, registers
// start at zero. Falling off the end (or jumping past it) halts like HALT.
// Observing the halt consumes one step, so even the empty program needs a
// step budget of at least 1 to report halted.

enum class Op : std::uint8_t { Inc, JzDec, Qry, Halt };

struct Instr {
  Op op = Op::Halt;
  std::uint64_t reg = 0;
  std::uint64_t target = 0;  // JZDEC only

  bool operator==(const Instr&) const = default;
};

using Program = std::vector<Instr>;

// Total bijection between instructions/programs and naturals. Every natural
// decodes to exactly one program; malformed code cannot occur.
BigInt instr_code(const Instr& ins);
Instr instr_from_code(const BigInt& code);
BigInt program_index(const Program& p);
Program program_from_index(const BigInt& index);

// One instruction per line, uppercase mnemonics; '#' starts a comment.
std::string program_to_text(const Program& p);
Program program_from_text(std::string_view text);  // throws ParseError

// Stage-bounded approximation of the n-th jump. Level 0 answers every
// membership query "no"; level n >= 1 at stage s admits k iff k < s and
// program k halts on input k within s steps against the level-(n-1) oracle
// at the same stage. Level 1 is monotone in s; higher levels are
// deterministic in (level, stage) but may be temporarily wrong.
struct StagedOracle {
  unsigned level = 0;
  std::uint64_t stage = 0;
};

bool oracle_member(const StagedOracle& oracle, std::uint64_t k);

struct RunResult {
  bool halted = false;
  std::uint64_t value = 0;      // r0 when halted
  std::uint64_t steps_used = 0; // steps consumed (== budget on timeout)
};

RunResult run_bounded(const Program& p, std::uint64_t input, std::uint64_t steps,
                      const StagedOracle& oracle = {});

// { k < stage : program k halts on input k within `stage` steps relative to
// the level-(n-1) staged oracle }. Requires level >= 1; results are cached.
std::vector<std::uint64_t> jump_stage_set(unsigned level, std::uint64_t stage);

}  // namespace stratum
