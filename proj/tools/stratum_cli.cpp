// stratum: command-line surface over the constructive-real core.
// Exit codes: 0 success, 2 input error, 3 wrapped-operation refusal.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <fstream>
#include <sstream>

#include "stratum/chains.hpp"
#include "stratum/creal.hpp"
#include "stratum/dcomp.hpp"
#include "stratum/errors.hpp"
#include "stratum/omega.hpp"
#include "stratum/oracle_reals.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitRefusal = 3;

using nlohmann::json;

struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned decimal_precision_index(unsigned digits) {
  stratum::BigInt target = stratum::pow10(digits + 1);
  return boost::multiprecision::msb(target) + 1;
}

int cmd_digits(const std::string& id, unsigned digits, const std::string& format) {
  const auto* entry = stratum::Catalog::standard().find(id);
  if (!entry || entry->kind != stratum::CatalogEntry::Kind::constructive)
    throw stratum::InvalidInput("unknown constant id '" + id + "'");
  auto value = entry->constructor();
  if (!std::holds_alternative<stratum::CReal>(value))
    throw Refusal("'" + id +
                  "' is oracle-relative: stage approximations only, no modulus at "
                  "base level, so faithful digits cannot be certified");
  const auto& real = std::get<stratum::CReal>(value);
  std::string text = stratum::to_decimal(real, digits);
  unsigned n = decimal_precision_index(digits);
  if (format == "json") {
    json j;
    j["schema"] = "stratum/1";
    j["command"] = "digits";
    j["id"] = id;
    j["digits"] = digits;
    j["value"] = text;
    j["provenance"] = real.provenance();
    j["precision_index"] = n;
    j["modulus"] = real.modulus(n);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
    std::cout << "provenance: " << real.provenance() << "; modulus(" << n
              << ") = " << real.modulus(n) << "\n";
  }
  return kExitOk;
}

int cmd_dcomp(const std::string& id, std::uint64_t budget, const std::string& format) {
  auto result = stratum::dcomp(id, budget);
  if (format == "json") {
    json j = result.to_json();
    j["command"] = "dcomp";
    j["id"] = id;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "dcomp(" << id << ")\n";
    if (result.resolved())
      std::cout << "  level:       " << result.level << "  ("
                << stratum::ladder_level_description(result.level) << ")\n";
    else
      std::cout << "  level:       unresolved under budget\n";
    std::cout << "  sigma:       \"" << result.sigma << "\"\n";
    std::cout << "  status:      "
              << (result.status == stratum::DStatus::exact ? "exact" : "upper_bound")
              << "\n";
    std::cout << "  budget_used: " << result.budget_used << "\n";
    if (!result.note.empty()) std::cout << "  note:        " << result.note << "\n";
  }
  return kExitOk;
}

int cmd_layers(std::uint64_t budget, const std::string& format) {
  auto table = stratum::layer_table(budget);
  if (format == "json")
    std::cout << table.to_json().dump() << "\n";
  else
    std::cout << table.to_text();
  return kExitOk;
}

int cmd_omega(std::uint64_t n_max, unsigned max_len, const std::string& format) {
  stratum::PrefixMachine machine{max_len};
  auto rows = stratum::omega_trace(machine, n_max);
  if (format == "json") {
    json j;
    j["schema"] = "stratum/1";
    j["command"] = "omega";
    j["max_len"] = max_len;
    std::vector<json> rows_json;
    for (const auto& row : rows) {
      json rj;
      rj["n"] = row.n;
      rj["omega_num"] = row.value.num().str();
      rj["omega_den"] = row.value.den().str();
      rj["halted_count"] = row.halted_count;
      rows_json.push_back(std::move(rj));
    }
    j["rows"] = rows_json;
    std::cout << j.dump() << "\n";
  } else if (format == "text") {
    for (const auto& row : rows)
      std::cout << "n=" << row.n << " omega=" << row.value.to_string()
                << " halted=" << row.halted_count << "\n";
  } else {
    std::cout << stratum::omega_trace_csv(rows);
  }
  return kExitOk;
}

int cmd_chain_encode(const std::string& elements, std::uint64_t bits,
                     const std::string& format) {
  std::vector<std::uint64_t> prefix;
  if (!elements.empty()) {
    std::istringstream in(elements);
    std::string token;
    while (std::getline(in, token, ',')) {
      try {
        prefix.push_back(std::stoull(token));
      } catch (const std::exception&) {
        throw stratum::ParseError("bad element '" + token + "'");
      }
    }
  }
  auto code = stratum::encode_set_to_bits(prefix, bits);
  if (format == "json") {
    json j;
    j["schema"] = "stratum/1";
    j["command"] = "chain-encode";
    j["bits"] = code.to_string01();
    j["ones_seen"] = code.ones_seen;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << code.to_string01() << "\n";
  }
  return kExitOk;
}

int cmd_chain_decode(const std::string& bits, const std::string& format) {
  auto code = stratum::ChainCode::from_string01(bits);
  auto outcome = stratum::decode_bits_to_set(code);
  if (format == "json") {
    json j;
    j["schema"] = "stratum/1";
    j["command"] = "chain-decode";
    j["elements"] = outcome.elements;
    j["insufficient_evidence"] = outcome.insufficient_evidence;
    j["ones_seen"] = outcome.ones_seen;
    j["scanned_bits"] = outcome.scanned_bits;
    std::cout << j.dump() << "\n";
  } else if (outcome.insufficient_evidence) {
    std::cout << "insufficient evidence (ones seen: " << outcome.ones_seen << ")\n";
  } else {
    for (std::size_t i = 0; i < outcome.elements.size(); ++i)
      std::cout << (i ? "," : "") << outcome.elements[i];
    std::cout << "\n";
  }
  return kExitOk;
}

stratum::Chain random_admissible_chain(std::uint64_t seed, unsigned levels) {
  // base rules plus one fresh opaque grant per level: strictly increasing by
  // construction, deterministic for a fixed seed
  std::mt19937_64 rng(seed);
  std::vector<stratum::ToySystem> systems;
  stratum::ToySystem sys;
  sys.rules.insert(stratum::Rule::RationalClosure);
  for (unsigned i = 0; i <= levels; ++i) {
    if (i > 0) {
      sys.grants.insert("token_" + std::to_string(rng() % 100000) + "_" +
                        std::to_string(i));
    }
    systems.push_back(sys);
  }
  return stratum::Chain::explicit_prefix(std::move(systems));
}

int cmd_chain_check(const std::string& file, const std::string& builtin, bool random,
                    unsigned levels, unsigned budget, std::uint64_t seed,
                    const std::string& format) {
  stratum::Chain chain;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw stratum::InvalidInput("cannot open '" + file + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw stratum::ParseError(std::string("bad chain JSON: ") + e.what());
    }
    chain = stratum::Chain::from_json(j);
  } else if (builtin == "condition-a") {
    chain = stratum::build_chain_condition_A(std::min(levels, 3u));
  } else if (builtin == "condition-c") {
    chain = stratum::build_chain_condition_C({"pi", "e", "sqrt2"});
  } else if (random) {
    chain = random_admissible_chain(seed, levels);
  } else {
    throw stratum::InvalidInput("chain check needs --file, --builtin or --random");
  }
  unsigned steps = std::min(levels, chain.levels() > 0 ? chain.levels() - 1 : 0);
  auto report = stratum::is_admissible_prefix(chain, steps, budget);
  if (format == "json") {
    json j = report.to_json();
    j["schema"] = "stratum/1";
    j["command"] = "chain-check";
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (report.admissible ? "admissible" : "not admissible") << " ("
              << steps << " steps, budget " << budget << ")\n";
    for (const auto& step : report.steps) {
      std::cout << "  step " << step.from << "->" << step.from + 1 << ": selector "
                << (step.selector_increases ? "ok" : "FAIL") << ", inclusion "
                << (step.inclusion_holds ? "ok" : "FAIL");
      if (step.witness)
        std::cout << ", witness " << *step.witness;
      else if (step.inclusion_holds)
        std::cout << ", no new real";
      std::cout << "\n";
    }
    if (!report.reason.empty()) std::cout << "  reason: " << report.reason << "\n";
  }
  return kExitOk;
}

int cmd_collapse_demo(unsigned budget, const std::string& format) {
  auto report = stratum::counterexample_noncollapse(budget);
  if (format == "json")
    std::cout << report.to_json().dump() << "\n";
  else
    std::cout << report.to_text();
  return report.all_conditions_hold() ? kExitOk : 1;
}

int cmd_specker(std::uint64_t stages, const std::string& format) {
  auto sp = stratum::specker();
  if (format == "json") {
    json j;
    j["schema"] = "stratum/1";
    j["command"] = "specker";
    std::vector<json> rows;
    for (std::uint64_t s = 0; s <= stages; ++s) {
      json rj;
      rj["stage"] = s;
      rj["value"] = sp.stage_approximant(s).to_string();
      rows.push_back(std::move(rj));
    }
    j["rows"] = rows;
    std::cout << j.dump() << "\n";
  } else if (format == "csv") {
    std::cout << "stage,num,den\n";
    for (std::uint64_t s = 0; s <= stages; ++s) {
      auto v = sp.stage_approximant(s);
      std::cout << s << ',' << v.num().str() << ',' << v.den().str() << "\n";
    }
  } else {
    for (std::uint64_t s = 0; s <= stages; ++s)
      std::cout << "stage " << s << ": " << sp.stage_approximant(s).to_string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratum: constructive reals, jump-stage oracles, definability chains"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // digits
  auto* digits_cmd = app.add_subcommand("digits", "Faithful decimal digits of a catalog constant");
  std::string digits_id;
  unsigned digits_count = 10;
  digits_cmd->add_option("id", digits_id, "Catalog constant id")->required();
  digits_cmd->add_option("digits", digits_count, "Digit count after the point")->required();

  // dcomp
  auto* dcomp_cmd = app.add_subcommand("dcomp", "Budgeted definability-compression search");
  std::string dcomp_id;
  std::uint64_t budget = stratum::kDefaultBudget;
  dcomp_cmd->add_option("id", dcomp_id, "Catalog entry id")->required();
  dcomp_cmd->add_option("--budget", budget, "Witnesses enumerated per level");

  // layers
  auto* layers_cmd = app.add_subcommand("layers", "Classify the catalog into Delta_n buckets");
  layers_cmd->add_option("--budget", budget, "Witnesses enumerated per level");

  // omega
  auto* omega_cmd = app.add_subcommand("omega", "Monotone Omega_n trace for the prefix-free machine");
  std::uint64_t omega_n_max = 0;
  unsigned max_len = 16;
  omega_cmd->add_option("n_max", omega_n_max, "Largest step bound")->required();
  omega_cmd->add_option("--max-len", max_len, "Maximum program bit-length");

  // chain
  auto* chain_cmd = app.add_subcommand("chain", "Cantor-space coding and admissibility checks");
  chain_cmd->require_subcommand(1);
  auto* encode_cmd = chain_cmd->add_subcommand("encode", "Set prefix -> 0/1 string");
  std::string encode_elements;
  std::uint64_t encode_bits = 0;
  encode_cmd->add_option("elements", encode_elements,
                         "Comma-separated strictly increasing naturals (may be empty)");
  encode_cmd->add_option("--bits", encode_bits, "Minimum emitted bit count");
  auto* decode_cmd = chain_cmd->add_subcommand("decode", "0/1 string -> certified elements");
  std::string decode_bits_arg;
  decode_cmd->add_option("bits", decode_bits_arg, "0/1 string")->required();
  auto* check_cmd = chain_cmd->add_subcommand("check", "Admissibility of a chain prefix");
  std::string check_file, check_builtin;
  bool check_random = false;
  unsigned check_levels = 3;
  unsigned check_budget = 6;
  std::uint64_t seed = 0;
  check_cmd->add_option("--file", check_file, "Chain JSON (stratum-chain/1)");
  check_cmd->add_option("--builtin", check_builtin, "condition-a or condition-c")
      ->check(CLI::IsMember({"condition-a", "condition-c"}));
  check_cmd->add_flag("--random", check_random, "Generate a random admissible chain");
  check_cmd->add_option("--levels", check_levels, "Steps to verify");
  check_cmd->add_option("--budget", check_budget, "Description-size budget");
  check_cmd->add_option("--seed", seed, "Seed for --random");

  // collapse-demo
  auto* collapse_cmd = app.add_subcommand("collapse-demo",
                                          "Reproduce the level-collapse counterexample");
  unsigned collapse_budget = 6;
  collapse_cmd->add_option("--budget", collapse_budget, "Description-size budget");

  // specker
  auto* specker_cmd = app.add_subcommand("specker", "Stage values of the Specker sequence");
  std::uint64_t specker_stages = 0;
  specker_cmd->add_option("stages", specker_stages, "Largest stage")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*digits_cmd) return cmd_digits(digits_id, digits_count, format);
    if (*dcomp_cmd) return cmd_dcomp(dcomp_id, budget, format);
    if (*layers_cmd) return cmd_layers(budget, format);
    if (*omega_cmd) {
      // CSV is the omega trace's native format
      std::string f = app.get_option("--format")->count() ? format : "csv";
      return cmd_omega(omega_n_max, max_len, f);
    }
    if (*chain_cmd) {
      if (*encode_cmd) return cmd_chain_encode(encode_elements, encode_bits, format);
      if (*decode_cmd) return cmd_chain_decode(decode_bits_arg, format);
      if (*check_cmd)
        return cmd_chain_check(check_file, check_builtin, check_random, check_levels,
                               check_budget, seed, format);
    }
    if (*collapse_cmd) return cmd_collapse_demo(collapse_budget, format);
    if (*specker_cmd) return cmd_specker(specker_stages, format);
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const stratum::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const stratum::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInput;
}
