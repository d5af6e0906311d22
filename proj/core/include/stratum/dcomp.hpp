#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stratum/creal.hpp"
#include "stratum/oracle_reals.hpp"

namespace stratum {

// The fixed level ladder:
//   0  rational grants
//   1  computable CReal constructions (program + modulus)
//   k>=2  constructions relative to StagedOracle(k-1)
// kLadderLevels doubles as the "unresolved under budget" sentinel level.
inline constexpr unsigned kLadderLevels = 4;
inline constexpr std::uint64_t kDefaultBudget = 100000;

std::string ladder_level_description(unsigned level);

enum class DStatus { exact, upper_bound };

struct DCompResult {
  unsigned level = kLadderLevels;  // kLadderLevels = no hit under budget
  std::string sigma;               // canonical witness descriptor, empty if none
  DStatus status = DStatus::upper_bound;
  std::uint64_t budget_used = 0;   // descriptors enumerated across levels
  std::string note;

  bool resolved() const { return level < kLadderLevels; }
  nlohmann::json to_json() const;
};

using RealValue = std::variant<CReal, OracleReal>;

struct CatalogEntry {
  enum class Kind { constructive, excluded, out_of_scope };

  std::string id;
  Kind kind = Kind::constructive;
  std::function<RealValue()> constructor;  // constructive entries only
  unsigned declared_level = 0;
  std::optional<Rational> exact_value;     // known-rational entries
  // By-construction evidence that no level below declared_level produces the
  // value (e.g. irrationality); enables exact status above level 0.
  std::optional<std::string> lower_bound_certificate;
  std::string notes;
};

class Catalog {
 public:
  static const Catalog& standard();

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& id) const;

 private:
  std::vector<CatalogEntry> entries_;
};

// Witness-descriptor machinery (exposed for tests and the CLI).
//
// Level 0: "rational p" / "rational p/q", every canonical rational, in
//          (length, bytes) order.
// Level 1: named series witnesses ("heron", "factorial-series+tail-modulus",
//          "leibniz-series+alt-tail-modulus"), single-digit rational atoms,
//          and add/mul/neg/sin composites, in (length, bytes) order.
// Level k>=2: the registered oracle constructions for that rung.
std::vector<std::string> enumerate_descriptors(unsigned level, std::uint64_t budget);

// Rebuild the value a descriptor denotes; nullopt for strings outside the
// witness language (or failing replay, e.g. a sin domain violation).
std::optional<RealValue> replay_descriptor(const std::string& sigma);

// Budgeted minimality search over the ladder: levels ascending, descriptors
// per level in (length, bytes) order, first verified hit wins. `exact` status
// needs a by-construction lower-bound certificate (or a level-0 hit on a
// known rational); otherwise the result is an upper bound, echoing that the
// true search problem is only semi-decidable.
DCompResult fractal_degree(const std::string& id, std::uint64_t budget = kDefaultBudget);

// fractal_degree plus the guarantee that sigma is the canonically serialized
// minimal witness; idempotent for a fixed budget.
DCompResult dcomp(const std::string& id, std::uint64_t budget = kDefaultBudget);

struct LayerRow {
  std::string id;
  CatalogEntry::Kind kind = CatalogEntry::Kind::constructive;
  DCompResult result;       // constructive entries
  unsigned advisory_level = 0;  // level tag carried by the constructed value
  bool advisory_undercuts = false;  // advisory < resolved degree: catalog bug
  std::string notes;
};

struct LayerTable {
  std::vector<LayerRow> rows;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

LayerTable layer_table(std::uint64_t budget = kDefaultBudget);

enum class DeltaVerdict { yes, no, unconfirmed };

// delta_membership(id, n): does id originate exactly at ladder level n?
// Unresolved (upper-bound) entries answer "unconfirmed", never a wrong bool.
std::pair<DeltaVerdict, DCompResult> delta_membership(const std::string& id, unsigned n,
                                                      std::uint64_t budget = kDefaultBudget);

}  // namespace stratum
