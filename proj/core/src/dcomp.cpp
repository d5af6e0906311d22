#include "stratum/dcomp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "stratum/chains.hpp"
#include "stratum/errors.hpp"

namespace stratum {

std::string ladder_level_description(unsigned level) {
  switch (level) {
    case 0: return "rational grants";
    case 1: return "computable constructions (program + modulus)";
    case 2: return "relative to StagedOracle(1)";
    case 3: return "relative to StagedOracle(2)";
    default: return "beyond ladder (unresolved under budget)";
  }
}

nlohmann::json DCompResult::to_json() const {
  nlohmann::json j;
  j["schema"] = "stratum/1";
  if (resolved()) j["level"] = level;
  j["resolved"] = resolved();
  j["sigma"] = sigma;
  j["status"] = status == DStatus::exact ? "exact" : "upper_bound";
  j["budget_used"] = budget_used;
  if (!note.empty()) j["note"] = note;
  return j;
}

// --- descriptor language ----------------------------------------------------

namespace {

// Named level-1 witnesses. The pi witness name follows the paper-style
// derivation (Leibniz series + alternating tail); its replay engine is the
// Machin evaluator, which the creal tests pin against the literal Leibniz
// series within that series' precision cap.
const std::vector<std::pair<std::string, CReal (*)()>>& named_level1_witnesses() {
  static const std::vector<std::pair<std::string, CReal (*)()>> table = {
      {"heron", &sqrt2},
      {"factorial-series+tail-modulus", &e_series},
      {"leibniz-series+alt-tail-modulus", &pi_machin},
  };
  return table;
}

// Single-digit rational atoms usable inside level-1 composites.
const std::vector<std::string>& level1_rational_atoms() {
  static const std::vector<std::string> atoms = [] {
    std::vector<std::string> out;
    for (int p = -9; p <= 9; ++p) out.push_back("rational " + std::to_string(p));
    for (int p = 1; p <= 9; ++p)
      for (int q = 2; q <= 9; ++q)
        if (std::gcd(p, q) == 1) {
          out.push_back("rational " + std::to_string(p) + "/" + std::to_string(q));
          out.push_back("rational -" + std::to_string(p) + "/" + std::to_string(q));
        }
    return out;
  }();
  return atoms;
}

const std::vector<std::string>& oracle_descriptors(unsigned ladder_level) {
  static const std::vector<std::string> level2 = {"jump-sum(1)", "specker-limit"};
  static const std::vector<std::string> level3 = {"jump-sum(2)"};
  static const std::vector<std::string> none;
  if (ladder_level == 2) return level2;
  if (ladder_level == 3) return level3;
  return none;
}

// Level-1 descriptor layers by serialized length, built on demand.
class Level1Layers {
 public:
  const std::vector<std::string>& layer(unsigned len) {
    std::lock_guard<std::mutex> lock(mu_);
    return layer_locked(len);
  }

 private:
  const std::vector<std::string>& layer_locked(unsigned len) {
    auto it = layers_.find(len);
    if (it != layers_.end()) return it->second;
    std::vector<std::string> out;
    for (const auto& [name, fn] : named_level1_witnesses())
      if (name.size() == len) out.push_back(name);
    for (const auto& a : level1_rational_atoms())
      if (a.size() == len) out.push_back(a);
    if (len >= 6) {
      for (const auto& inner : layer_locked(len - 5)) {
        out.push_back("neg(" + inner + ")");
        out.push_back("sin(" + inner + ")");
      }
      for (unsigned left = 1; left + 1 <= len - 6; ++left) {
        unsigned right = len - 6 - left;
        if (right < 1) continue;
        const auto& xs = layer_locked(left);
        if (xs.empty()) continue;
        const auto& ys = layer_locked(right);
        if (ys.empty()) continue;
        for (const auto& x : xs)
          for (const auto& y : ys) {
            out.push_back("add(" + x + "," + y + ")");
            out.push_back("mul(" + x + "," + y + ")");
          }
      }
    }
    std::sort(out.begin(), out.end());
    return layers_.emplace(len, std::move(out)).first->second;
  }

  std::mutex mu_;
  std::map<unsigned, std::vector<std::string>> layers_;
};

Level1Layers& level1_layers() {
  static Level1Layers layers;
  return layers;
}

// Length caps keep layer materialization bounded; any realistic budget is
// spent well before reaching them.
constexpr unsigned kMaxLevel0Len = 6;    // ~1.2M canonical rationals
constexpr unsigned kMaxLevel1Len = 40;

// Enumerates level descriptors in (length, bytes) order, stopping at the
// budget; visit returns true to stop early (hit found).
template <typename Visit>
std::uint64_t for_each_descriptor(unsigned level, std::uint64_t budget, Visit visit) {
  std::uint64_t used = 0;
  if (level == 0) {
    for (unsigned len = 1; used < budget && len <= kMaxLevel0Len; ++len) {
      for (const auto& r : rational_layer(len)) {
        if (used >= budget) break;
        ++used;
        if (visit("rational " + r.text)) return used;
      }
    }
    return used;
  }
  if (level == 1) {
    for (unsigned len = 1; used < budget && len <= kMaxLevel1Len; ++len) {
      for (const auto& d : level1_layers().layer(len)) {
        if (used >= budget) break;
        ++used;
        if (visit(d)) return used;
      }
    }
    return used;
  }
  for (const auto& d : oracle_descriptors(level)) {
    if (used >= budget) break;
    ++used;
    if (visit(d)) return used;
  }
  return used;
}

std::optional<RealValue> replay_impl(std::string_view s);

std::optional<std::pair<RealValue, RealValue>> replay_two(std::string_view inner) {
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    char c = inner[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      auto a = replay_impl(inner.substr(0, i));
      auto b = replay_impl(inner.substr(i + 1));
      if (a && b) return std::make_pair(*a, *b);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<RealValue> replay_impl(std::string_view s) {
  for (const auto& [name, fn] : named_level1_witnesses())
    if (s == name) return RealValue(fn());
  if (s == "jump-sum(1)") return RealValue(witness_real(1));
  if (s == "jump-sum(2)") return RealValue(witness_real(2));
  if (s == "specker-limit") return RealValue(specker());
  if (s.rfind("rational ", 0) == 0) {
    auto q = Rational::parse(s.substr(9));
    if (!q) return std::nullopt;
    return RealValue(from_rational(*q));
  }
  auto unwrap = [&](std::string_view head) -> std::optional<std::string_view> {
    if (s.size() > head.size() + 1 && s.substr(0, head.size()) == head && s.back() == ')')
      return s.substr(head.size(), s.size() - head.size() - 1);
    return std::nullopt;
  };
  try {
    if (auto inner = unwrap("neg(")) {
      auto v = replay_impl(*inner);
      if (v && std::holds_alternative<CReal>(*v))
        return RealValue(negate(std::get<CReal>(*v)));
      return std::nullopt;
    }
    if (auto inner = unwrap("sin(")) {
      auto v = replay_impl(*inner);
      if (v && std::holds_alternative<CReal>(*v))
        return RealValue(sin_taylor(std::get<CReal>(*v)));
      return std::nullopt;
    }
    if (auto inner = unwrap("add(")) {
      auto pair = replay_two(*inner);
      if (pair && std::holds_alternative<CReal>(pair->first) &&
          std::holds_alternative<CReal>(pair->second))
        return RealValue(add(std::get<CReal>(pair->first), std::get<CReal>(pair->second)));
      return std::nullopt;
    }
    if (auto inner = unwrap("mul(")) {
      auto pair = replay_two(*inner);
      if (pair && std::holds_alternative<CReal>(pair->first) &&
          std::holds_alternative<CReal>(pair->second))
        return RealValue(mul(std::get<CReal>(pair->first), std::get<CReal>(pair->second)));
      return std::nullopt;
    }
  } catch (const DomainViolation&) {
    return std::nullopt;
  } catch (const PrecisionCapExceeded&) {
    return std::nullopt;
  }
  return std::nullopt;
}

// --- match verification --------------------------------------------------------

// Sound-by-screening acceptance. A strict cmp_at verdict rejects; acceptance
// means indistinguishable at a precision scaled so that near-misses cannot
// slip through at desk-scale budgets.
bool creal_matches(const CReal& entry, const CReal& candidate,
                   const std::optional<Rational>& exact_value) {
  if (exact_value) {
    // known-rational entry: candidate must sit on the exact value
    if (cmp_at(candidate, from_rational(*exact_value), 40) != Cmp::indistinguishable)
      return false;
    return true;
  }
  if (cmp_at(entry, candidate, 6) != Cmp::indistinguishable) return false;  // screen
  return cmp_at(entry, candidate, 22) == Cmp::indistinguishable;
}

bool rational_candidate_matches(const CatalogEntry& entry, const RealValue& value,
                                const Rational& q) {
  if (entry.exact_value) return q == *entry.exact_value;
  if (std::holds_alternative<CReal>(value)) {
    const CReal& real = std::get<CReal>(value);
    unsigned den_bits = 1;
    BigInt d = q.den();
    while (d > 1) {
      d >>= 1;
      ++den_bits;
    }
    unsigned precision = std::min(38u, 26 + 2 * den_bits);
    if (cmp_at(real, from_rational(q), 6) != Cmp::indistinguishable) return false;
    return cmp_at(real, from_rational(q), precision) == Cmp::indistinguishable;
  }
  // Oracle-backed entries have no modulus, so no rational candidate can ever
  // be confirmed; the level-0 search exhausts its budget instead.
  return false;
}

bool oracle_matches(const OracleReal& entry, const OracleReal& candidate) {
  if (entry.level() != candidate.level()) return false;
  for (std::uint64_t s : {0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 24, 32, 48, 64})
    if (entry.stage_approximant(s) != candidate.stage_approximant(s)) return false;
  return true;
}

bool is_oracle_descriptor(const std::string& sigma) {
  return sigma.rfind("jump-sum(", 0) == 0 || sigma == "specker-limit";
}

bool candidate_matches(const CatalogEntry& entry, const RealValue& entry_value,
                       const std::string& sigma) {
  if (sigma.rfind("rational ", 0) == 0) {
    auto q = Rational::parse(sigma.substr(9));
    return q && rational_candidate_matches(entry, entry_value, *q);
  }
  if (std::holds_alternative<OracleReal>(entry_value) && !is_oracle_descriptor(sigma))
    return false;  // no modulus to verify a computable candidate against
  auto replayed = replay_descriptor(sigma);
  if (!replayed) return false;
  try {
    if (std::holds_alternative<CReal>(entry_value)) {
      if (!std::holds_alternative<CReal>(*replayed)) return false;
      return creal_matches(std::get<CReal>(entry_value), std::get<CReal>(*replayed),
                           entry.exact_value);
    }
    if (!std::holds_alternative<OracleReal>(*replayed)) return false;
    return oracle_matches(std::get<OracleReal>(entry_value),
                          std::get<OracleReal>(*replayed));
  } catch (const PrecisionCapExceeded&) {
    return false;
  }
}

}  // namespace

std::vector<std::string> enumerate_descriptors(unsigned level, std::uint64_t budget) {
  std::vector<std::string> out;
  for_each_descriptor(level, budget, [&out](const std::string& d) {
    out.push_back(d);
    return false;
  });
  return out;
}

std::optional<RealValue> replay_descriptor(const std::string& sigma) {
  return replay_impl(sigma);
}

// --- catalog --------------------------------------------------------------------

namespace {

CatalogEntry constructive(std::string id, std::function<RealValue()> ctor,
                          unsigned declared, std::optional<Rational> exact,
                          std::optional<std::string> cert, std::string notes) {
  CatalogEntry e;
  e.id = std::move(id);
  e.kind = CatalogEntry::Kind::constructive;
  e.constructor = std::move(ctor);
  e.declared_level = declared;
  e.exact_value = std::move(exact);
  e.lower_bound_certificate = std::move(cert);
  e.notes = std::move(notes);
  return e;
}

CatalogEntry static_row(std::string id, CatalogEntry::Kind kind, std::string notes) {
  CatalogEntry e;
  e.id = std::move(id);
  e.kind = kind;
  e.notes = std::move(notes);
  return e;
}

}  // namespace

const Catalog& Catalog::standard() {
  static const Catalog catalog = [] {
    Catalog c;
    c.entries_.push_back(constructive(
        "one", [] { return RealValue(from_rational(Rational(1))); }, 0, Rational(1),
        std::nullopt, "unit"));
    c.entries_.push_back(constructive(
        "three_quarters", [] { return RealValue(from_rational(Rational(3, 4))); }, 0,
        Rational(3, 4), std::nullopt, "sample rational"));
    c.entries_.push_back(constructive(
        "r_4_3", [] { return RealValue(quarter_geometric()); }, 0, Rational(4, 3),
        std::nullopt,
        "sum 2^-2k presented as a series; the value itself is rational"));
    c.entries_.push_back(constructive(
        "sqrt2", [] { return RealValue(sqrt2()); }, 1, std::nullopt,
        "irrational: root of x^2 - 2, no rational satisfies it",
        "Heron iteration"));
    c.entries_.push_back(constructive(
        "pi", [] { return RealValue(pi_machin()); }, 1, std::nullopt,
        "irrational (Lambert 1761)", "series witness; Machin evaluator"));
    c.entries_.push_back(constructive(
        "e", [] { return RealValue(e_series()); }, 1, std::nullopt,
        "irrational (factorial series argument)", "factorial series"));
    c.entries_.push_back(constructive(
        "sin_sqrt2_over_6",
        [] { return RealValue(sin_taylor(mul(sqrt2(), from_rational(Rational(1, 6))))); },
        1, std::nullopt,
        "transcendental: sin of a nonzero algebraic (Lindemann-Weierstrass)",
        "composition: heron + rational scaling + taylor"));
    c.entries_.push_back(constructive(
        "witness_real_1", [] { return RealValue(witness_real(1)); }, 2, std::nullopt,
        std::nullopt, "binary-encoded stage approximation of the first jump"));
    c.entries_.push_back(constructive(
        "specker_limit", [] { return RealValue(specker()); }, 2, std::nullopt,
        std::nullopt,
        "limit of the Specker sequence; same real as witness_real_1"));
    c.entries_.push_back(constructive(
        "witness_real_2", [] { return RealValue(witness_real(2)); }, 3, std::nullopt,
        std::nullopt, "stage approximation of the second jump"));
    c.entries_.push_back(static_row(
        "random_real", CatalogEntry::Kind::excluded,
        "non-constructive (random subset of N): no chain exists"));
    c.entries_.push_back(static_row(
        "hamel_basis", CatalogEntry::Kind::excluded,
        "choice-dependent object: no chain exists"));
    c.entries_.push_back(static_row(
        "hyperarithmetical_rH", CatalogEntry::Kind::out_of_scope,
        "needs well-founded recursion beyond this ladder"));
    c.entries_.push_back(static_row(
        "fine_structure_alpha", CatalogEntry::Kind::out_of_scope,
        "physical constant; no formal derivation carried here"));
    c.entries_.push_back(static_row(
        "feigenbaum_delta", CatalogEntry::Kind::out_of_scope,
        "universality constant; renormalization proof not carried here"));
    return c;
  }();
  return catalog;
}

const CatalogEntry* Catalog::find(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return &e;
  return nullptr;
}

// --- search -----------------------------------------------------------------------

DCompResult fractal_degree(const std::string& id, std::uint64_t budget) {
  const CatalogEntry* entry = Catalog::standard().find(id);
  if (!entry) throw InvalidInput("fractal_degree: unknown catalog id '" + id + "'");
  if (entry->kind != CatalogEntry::Kind::constructive)
    throw InvalidInput("fractal_degree: '" + id + "' carries no constructor (" +
                       entry->notes + ")");

  RealValue value = entry->constructor();
  DCompResult result;

  for (unsigned level = 0; level < kLadderLevels; ++level) {
    std::optional<std::string> hit;
    std::uint64_t used = for_each_descriptor(
        level, budget, [&](const std::string& sigma) {
          if (candidate_matches(*entry, value, sigma)) {
            hit = sigma;
            return true;
          }
          return false;
        });
    result.budget_used += used;
    if (hit) {
      result.level = level;
      result.sigma = *hit;
      // Every level below was searched to budget (or space) exhaustion with
      // no hit; exactness additionally needs by-construction evidence.
      bool certified =
          (level == 0 && entry->exact_value.has_value()) ||
          (entry->lower_bound_certificate && entry->declared_level >= level);
      if (certified) {
        result.status = DStatus::exact;
        result.note = level == 0 ? "exact rational hit"
                                 : "lower bound: " + *entry->lower_bound_certificate;
      } else {
        result.status = DStatus::upper_bound;
        result.note = "lower levels exhausted under budget only (no certificate)";
      }
      return result;
    }
  }
  result.level = kLadderLevels;
  result.status = DStatus::upper_bound;
  result.note = "no witness confirmed at any ladder level under budget " +
                std::to_string(budget);
  return result;
}

DCompResult dcomp(const std::string& id, std::uint64_t budget) {
  return fractal_degree(id, budget);
}

// --- reporting ---------------------------------------------------------------------

LayerTable layer_table(std::uint64_t budget) {
  LayerTable table;
  for (const auto& entry : Catalog::standard().entries()) {
    LayerRow row;
    row.id = entry.id;
    row.kind = entry.kind;
    row.notes = entry.notes;
    if (entry.kind == CatalogEntry::Kind::constructive) {
      row.result = fractal_degree(entry.id, budget);
      RealValue v = entry.constructor();
      row.advisory_level = std::holds_alternative<CReal>(v)
                               ? std::get<CReal>(v).level_tag()
                               : std::get<OracleReal>(v).level() + 1;
      row.advisory_undercuts =
          row.result.resolved() && row.advisory_level < row.result.level;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string LayerTable::to_text() const {
  std::ostringstream out;
  out << "layer table (Delta_n buckets by resolved fractal degree)\n";
  for (unsigned level = 0; level < kLadderLevels; ++level) {
    out << "Delta_" << level << ":\n";
    for (const auto& row : rows) {
      if (row.kind != CatalogEntry::Kind::constructive) continue;
      if (!row.result.resolved() || row.result.level != level) continue;
      out << "  " << row.id << "  sigma=\"" << row.result.sigma << "\"  "
          << (row.result.status == DStatus::exact ? "exact" : "upper_bound");
      if (row.advisory_undercuts) out << "  [catalog bug: advisory undercuts]";
      out << "\n";
    }
  }
  bool any_unresolved = false;
  for (const auto& row : rows)
    if (row.kind == CatalogEntry::Kind::constructive && !row.result.resolved())
      any_unresolved = true;
  if (any_unresolved) {
    out << "unresolved under budget:\n";
    for (const auto& row : rows)
      if (row.kind == CatalogEntry::Kind::constructive && !row.result.resolved())
        out << "  " << row.id << "\n";
  }
  out << "excluded (no chain exists):\n";
  for (const auto& row : rows)
    if (row.kind == CatalogEntry::Kind::excluded)
      out << "  " << row.id << "  -- " << row.notes << "\n";
  out << "out of scope:\n";
  for (const auto& row : rows)
    if (row.kind == CatalogEntry::Kind::out_of_scope)
      out << "  " << row.id << "  -- " << row.notes << "\n";
  return out.str();
}

nlohmann::json LayerTable::to_json() const {
  nlohmann::json j;
  j["schema"] = "stratum/1";
  std::vector<nlohmann::json> rows_json;
  for (const auto& row : rows) {
    nlohmann::json rj;
    rj["id"] = row.id;
    switch (row.kind) {
      case CatalogEntry::Kind::constructive: {
        rj["kind"] = "constructive";
        rj["result"] = row.result.to_json();
        rj["advisory_level"] = row.advisory_level;
        rj["advisory_undercuts"] = row.advisory_undercuts;
        break;
      }
      case CatalogEntry::Kind::excluded:
        rj["kind"] = "excluded";
        break;
      case CatalogEntry::Kind::out_of_scope:
        rj["kind"] = "out_of_scope";
        break;
    }
    rj["notes"] = row.notes;
    rows_json.push_back(std::move(rj));
  }
  j["rows"] = rows_json;
  return j;
}

std::pair<DeltaVerdict, DCompResult> delta_membership(const std::string& id, unsigned n,
                                                      std::uint64_t budget) {
  DCompResult result = fractal_degree(id, budget);
  if (result.status != DStatus::exact) return {DeltaVerdict::unconfirmed, result};
  return {result.level == n ? DeltaVerdict::yes : DeltaVerdict::no, result};
}

}  // namespace stratum
