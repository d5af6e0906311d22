#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stratum/rational.hpp"

namespace stratum {

// --- identifiers ------------------------------------------------------------
//
// Real-identifiers are canonical term strings:
//   * rationals in canonical text ("4/3", "-1/2", "7") — size = text length;
//   * opaque atoms ("sqrt2", "pi", "r_4_3", "psi_token", "witness_real_1")
//     — size 1;
//   * composites "plus(a,b)", "times(a,b)", "neg(a)" — size 1 + operand sizes,
//     commutative operands stored in canonical (size, bytes) order.
// Witness minimality everywhere is lexicographic on (size, bytes).

struct Ident {
  unsigned size = 1;
  std::string text;

  auto operator<=>(const Ident&) const = default;
  static Ident of(std::string text);  // total: malformed input is an atom
};

bool is_rational_ident(const std::string& text);
std::string plus_ident(const std::string& a, const std::string& b);
std::string times_ident(const std::string& a, const std::string& b);
std::string neg_ident(const std::string& a);

// --- toy systems ------------------------------------------------------------

enum class Rule {
  RationalClosure,   // all rational ids of size <= budget
  FieldOpsClosure,   // constants 0, 1; plus/times/neg over members
  OracleLevel1,      // witness_real_1
  OracleLevel2,      // witness_real_1..2
  OracleLevel3,      // witness_real_1..3
};

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

// A finite grant-axiom system: reals asserted definable outright plus
// closure rules from the fixed catalog. The numeric code is the position in
// a computable enumeration (base-256 reading of the canonical serialization),
// so enlarging a system always enlarges its code.
struct ToySystem {
  std::set<std::string> grants;
  std::set<Rule> rules;

  bool operator==(const ToySystem&) const = default;

  std::string canonical_serialization() const;
  BigInt code() const;
  static std::optional<ToySystem> from_code(const BigInt& code);

  nlohmann::json to_json() const;
  static ToySystem from_json(const nlohmann::json& j);  // throws ParseError
};

// Budget-truncated definable set. The rational-closure universe is kept as a
// flag rather than materialized; `items` holds everything else. All members
// have description size <= budget.
struct DefinableSet {
  unsigned budget = 0;
  bool all_rationals = false;
  std::set<Ident> items;

  bool contains(const std::string& id) const;
  bool subset_of(const DefinableSet& other) const;
  bool operator==(const DefinableSet& other) const;
  std::size_t size() const;  // materialized cardinality

  // Least element of *this \ smaller in (size, bytes) order, if any.
  std::optional<std::string> min_missing_from(const DefinableSet& smaller) const;

  std::vector<std::string> to_sorted_ids() const;  // materializes, tests only
};

// Least fixed point of grants under rules, truncated to ids of size <= budget.
// Deterministic, monotone in grants, rules and budget. Requires budget >= 1.
DefinableSet definable_set(const ToySystem& sys, unsigned budget);

// All canonical rational ids with text length <= budget, in (size, bytes) order.
const std::vector<Ident>& rational_universe(unsigned budget);

// Canonical rational ids of exactly the given text length, byte-sorted.
const std::vector<Ident>& rational_layer(unsigned len);

// --- chains -----------------------------------------------------------------

// A selector-indexed sequence of systems, given as an explicit finite prefix
// or as a generator. Admissibility is checked per prefix, never assumed.
class Chain {
 public:
  Chain() = default;
  static Chain explicit_prefix(std::vector<ToySystem> systems);
  static Chain generated(std::function<ToySystem(unsigned)> gen, unsigned levels);

  ToySystem system(unsigned level) const;  // throws InvalidInput past the prefix
  unsigned levels() const;                 // systems available (prefix length)

  nlohmann::json to_json() const;  // explicit prefixes only
  static Chain from_json(const nlohmann::json& j);

 private:
  std::vector<ToySystem> prefix_;
  std::function<ToySystem(unsigned)> gen_;
  unsigned levels_ = 0;
};

struct AdmissibilityStep {
  unsigned from = 0;
  bool selector_increases = false;
  bool inclusion_holds = false;
  std::optional<std::string> witness;  // strictness evidence

  bool ok() const { return selector_increases && inclusion_holds && witness.has_value(); }
};

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<AdmissibilityStep> steps;
  std::optional<unsigned> first_failing_step;
  std::string reason;  // empty when admissible

  nlohmann::json to_json() const;
};

// Checks selector strict increase and strict definable-set growth on levels
// [0, n]; failure is a verdict, not an error.
AdmissibilityReport is_admissible_prefix(const Chain& c, unsigned n, unsigned budget);

// Minimal id in definable(b) \ definable(a), or nullopt when nothing is new.
std::optional<std::string> verify_strict_growth(const ToySystem& a, const ToySystem& b,
                                                unsigned budget);

DefinableSet level_set(const Chain& c, unsigned n, unsigned budget);
DefinableSet cumulative_set(const Chain& c, unsigned n, unsigned budget);
DefinableSet global_level(const std::vector<Chain>& family, unsigned n, unsigned budget);
DefinableSet global_cumulative(const std::vector<Chain>& family, unsigned n,
                               unsigned budget);

// Chain builders for the two effectively-verifiable ladder shapes: the
// oracle-closure ladder (levels <= 3) and the one-grant-per-level ladder.
Chain build_chain_condition_A(unsigned levels);
Chain build_chain_condition_C(const std::vector<std::string>& grant_stream);

// The executable level-collapse counterexample at n = 1: C1 grants the
// series constant r_4_3 via an axiom token at level 0 and then drops it;
// C2 never grants it; both share the same level-1 system.
struct NoncollapseReport {
  Chain c1, c2;
  unsigned n = 1;
  std::string real_id;  // "r_4_3"
  bool in_c1_level0 = false;
  bool in_c1_cumulative = false;
  bool absent_from_c1_level_n = false;
  bool absent_from_c2_level_n = false;
  bool same_level_n_system = false;
  bool in_global_cumulative = false;
  bool absent_from_global_level = false;
  bool c1_nonadmissible_at_0 = false;
  bool c2_admissible = false;

  bool all_conditions_hold() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

NoncollapseReport counterexample_noncollapse(unsigned budget = 6);

// --- Cantor-space coding ------------------------------------------------------

// Characteristic bits of a set, as finite evidence plus an optional generator
// for bits past the stored prefix.
struct ChainCode {
  std::vector<std::uint8_t> prefix;  // 0/1
  std::function<std::uint8_t(std::uint64_t)> generator;  // optional
  std::uint64_t ones_seen = 0;

  std::uint8_t bit(std::uint64_t i) const;  // throws InvalidInput past evidence
  std::uint64_t evidence_length() const { return prefix.size(); }

  std::string to_string01() const;
  static ChainCode from_string01(std::string_view bits);  // throws ParseError
};

// bits(n) = 1 iff n appears in the strictly increasing prefix; throws
// InvalidInput naming the position of the first violation.
ChainCode encode_set_to_bits(const std::vector<std::uint64_t>& increasing_prefix,
                             std::uint64_t bit_length = 0);

struct DecodeOutcome {
  std::vector<std::uint64_t> elements;  // certified: >= 2 later ones in evidence
  bool insufficient_evidence = false;   // no element could be certified
  std::uint64_t ones_seen = 0;
  std::uint64_t scanned_bits = 0;
};

// Enumerates positions with a 1 and at least two later 1s inside the scanned
// window (the "infinitely many ones" proviso at finite scale). Never guesses:
// an uncertifiable prefix yields insufficient_evidence, not a wrong set.
DecodeOutcome decode_bits_to_set(const ChainCode& code, std::uint64_t horizon = 0);

}  // namespace stratum
