#include "stratum/machine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "stratum/errors.hpp"

namespace stratum {

// Instruction codes: 0 = HALT; m >= 1 splits as (m-1) = 3q + c with
// c = 0 -> INC q, c = 1 -> QRY q, c = 2 -> JZDEC unpair(q).
BigInt instr_code(const Instr& ins) {
  switch (ins.op) {
    case Op::Halt:
      return 0;
    case Op::Inc:
      return 1 + BigInt(ins.reg) * 3;
    case Op::Qry:
      return 1 + BigInt(ins.reg) * 3 + 1;
    case Op::JzDec:
      return 1 + cantor_pair(ins.reg, ins.target) * 3 + 2;
  }
  return 0;
}

Instr instr_from_code(const BigInt& code) {
  if (code == 0) return Instr{Op::Halt, 0, 0};
  BigInt m = code - 1;
  unsigned c = static_cast<unsigned>(m % 3);
  BigInt q = m / 3;
  if (c == 0) return Instr{Op::Inc, q.convert_to<std::uint64_t>(), 0};
  if (c == 1) return Instr{Op::Qry, q.convert_to<std::uint64_t>(), 0};
  auto [reg, target] = cantor_unpair(q);
  return Instr{Op::JzDec, reg.convert_to<std::uint64_t>(),
               target.convert_to<std::uint64_t>()};
}

BigInt program_index(const Program& p) {
  std::vector<BigInt> codes;
  codes.reserve(p.size());
  for (const auto& ins : p) codes.push_back(instr_code(ins));
  return encode_list(codes);
}

Program program_from_index(const BigInt& index) {
  Program p;
  for (const auto& code : decode_list(index)) p.push_back(instr_from_code(code));
  return p;
}

std::string program_to_text(const Program& p) {
  std::ostringstream out;
  for (const auto& ins : p) {
    switch (ins.op) {
      case Op::Inc:
        out << "INC " << ins.reg << '\n';
        break;
      case Op::JzDec:
        out << "JZDEC " << ins.reg << ' ' << ins.target << '\n';
        break;
      case Op::Qry:
        out << "QRY " << ins.reg << '\n';
        break;
      case Op::Halt:
        out << "HALT\n";
        break;
    }
  }
  return out.str();
}

Program program_from_text(std::string_view text) {
  Program p;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  constexpr std::uint64_t kMaxOperand = 1 << 20;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string mnem;
    if (!(ls >> mnem)) continue;  // blank line
    auto operand = [&](const char* what) {
      std::uint64_t v;
      if (!(ls >> v) || v > kMaxOperand)
        throw ParseError("line " + std::to_string(lineno) + ": expected " + what +
                         " <= " + std::to_string(kMaxOperand));
      return v;
    };
    if (mnem == "INC") {
      p.push_back({Op::Inc, operand("register"), 0});
    } else if (mnem == "JZDEC") {
      std::uint64_t r = operand("register");
      p.push_back({Op::JzDec, r, operand("target")});
    } else if (mnem == "QRY") {
      p.push_back({Op::Qry, operand("register"), 0});
    } else if (mnem == "HALT") {
      p.push_back({Op::Halt, 0, 0});
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown mnemonic '" +
                       mnem + "'");
    }
    std::string trailing;
    if (ls >> trailing)
      throw ParseError("line " + std::to_string(lineno) + ": trailing token '" +
                       trailing + "'");
  }
  return p;
}

RunResult run_bounded(const Program& p, std::uint64_t input, std::uint64_t steps,
                      const StagedOracle& oracle) {
  std::vector<std::uint64_t> regs(8, 0);
  if (regs.size() < 2) regs.resize(2);
  regs[1] = input;
  auto reg = [&regs](std::uint64_t i) -> std::uint64_t& {
    if (i >= regs.size()) regs.resize(i + 1, 0);
    return regs[i];
  };
  std::uint64_t pc = 0;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    if (pc >= p.size()) return {true, regs[0], step};
    const Instr& ins = p[pc];
    switch (ins.op) {
      case Op::Halt:
        return {true, regs[0], step};
      case Op::Inc:
        ++reg(ins.reg);
        ++pc;
        break;
      case Op::JzDec: {
        std::uint64_t& r = reg(ins.reg);
        if (r == 0) {
          pc = ins.target;
        } else {
          --r;
          ++pc;
        }
        break;
      }
      case Op::Qry: {
        std::uint64_t& r = reg(ins.reg);
        r = oracle_member(oracle, r) ? 1 : 0;
        ++pc;
        break;
      }
    }
  }
  return {false, 0, steps};
}

namespace {

std::mutex g_stage_mu;
std::map<std::pair<unsigned, std::uint64_t>, std::vector<std::uint64_t>> g_stage_cache;

std::vector<std::uint64_t> compute_stage_set(unsigned level, std::uint64_t stage) {
  StagedOracle inner{level - 1, stage};
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < stage; ++k) {
    Program p = program_from_index(BigInt(k));
    if (run_bounded(p, k, stage, inner).halted) out.push_back(k);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> jump_stage_set(unsigned level, std::uint64_t stage) {
  if (level == 0)
    throw InvalidInput("jump_stage_set: level 0 is the empty oracle, not a jump");
  {
    std::lock_guard<std::mutex> lock(g_stage_mu);
    auto it = g_stage_cache.find({level, stage});
    if (it != g_stage_cache.end()) return it->second;
  }
  auto set = compute_stage_set(level, stage);
  std::lock_guard<std::mutex> lock(g_stage_mu);
  return g_stage_cache.emplace(std::make_pair(level, stage), std::move(set))
      .first->second;
}

bool oracle_member(const StagedOracle& oracle, std::uint64_t k) {
  if (oracle.level == 0) return false;
  auto set = jump_stage_set(oracle.level, oracle.stage);
  return std::binary_search(set.begin(), set.end(), k);
}

}  // namespace stratum
