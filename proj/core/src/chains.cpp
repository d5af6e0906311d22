#include "stratum/chains.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "stratum/errors.hpp"

namespace stratum {

// --- identifiers ------------------------------------------------------------

namespace {

struct ParsedIdent {
  unsigned size;
  std::size_t end;
};

std::optional<ParsedIdent> parse_ident_at(std::string_view s, std::size_t pos);

std::optional<ParsedIdent> parse_composite(std::string_view s, std::size_t pos,
                                           std::size_t arity) {
  auto first = parse_ident_at(s, pos);
  if (!first) return std::nullopt;
  unsigned size = 1 + first->size;
  std::size_t at = first->end;
  if (arity == 2) {
    if (at >= s.size() || s[at] != ',') return std::nullopt;
    auto second = parse_ident_at(s, at + 1);
    if (!second) return std::nullopt;
    size += second->size;
    at = second->end;
  }
  if (at >= s.size() || s[at] != ')') return std::nullopt;
  return ParsedIdent{size, at + 1};
}

std::optional<ParsedIdent> parse_ident_at(std::string_view s, std::size_t pos) {
  if (s.compare(pos, 5, "plus(") == 0) return parse_composite(s, pos + 5, 2);
  if (s.compare(pos, 6, "times(") == 0) return parse_composite(s, pos + 6, 2);
  if (s.compare(pos, 4, "neg(") == 0) return parse_composite(s, pos + 4, 1);
  std::size_t end = pos;
  while (end < s.size() && s[end] != ',' && s[end] != ')' && s[end] != '(') ++end;
  if (end == pos) return std::nullopt;
  std::string_view token = s.substr(pos, end - pos);
  unsigned size = Rational::parse(token) ? static_cast<unsigned>(token.size()) : 1;
  return ParsedIdent{size, end};
}

}  // namespace

Ident Ident::of(std::string text) {
  auto parsed = parse_ident_at(text, 0);
  unsigned size = (parsed && parsed->end == text.size()) ? parsed->size : 1;
  return Ident{size, std::move(text)};
}

bool is_rational_ident(const std::string& text) {
  return Rational::parse(text).has_value();
}

std::string plus_ident(const std::string& a, const std::string& b) {
  Ident ia = Ident::of(a), ib = Ident::of(b);
  const std::string& lo = (ia <= ib) ? a : b;
  const std::string& hi = (ia <= ib) ? b : a;
  return "plus(" + lo + "," + hi + ")";
}

std::string times_ident(const std::string& a, const std::string& b) {
  Ident ia = Ident::of(a), ib = Ident::of(b);
  const std::string& lo = (ia <= ib) ? a : b;
  const std::string& hi = (ia <= ib) ? b : a;
  return "times(" + lo + "," + hi + ")";
}

std::string neg_ident(const std::string& a) { return "neg(" + a + ")"; }

// --- rules and systems --------------------------------------------------------

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::RationalClosure: return "rational-closure";
    case Rule::FieldOpsClosure: return "field-ops-closure";
    case Rule::OracleLevel1: return "oracle-level-1-closure";
    case Rule::OracleLevel2: return "oracle-level-2-closure";
    case Rule::OracleLevel3: return "oracle-level-3-closure";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (Rule r : {Rule::RationalClosure, Rule::FieldOpsClosure, Rule::OracleLevel1,
                 Rule::OracleLevel2, Rule::OracleLevel3})
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

std::string ToySystem::canonical_serialization() const {
  std::string out = "system{grants=[";
  bool first = true;
  for (const auto& g : grants) {
    if (!first) out += ',';
    out += g;
    first = false;
  }
  out += "];rules=[";
  std::vector<std::string> names;
  for (Rule r : rules) names.push_back(rule_name(r));
  std::sort(names.begin(), names.end());
  first = true;
  for (const auto& n : names) {
    if (!first) out += ',';
    out += n;
    first = false;
  }
  out += "]}";
  return out;
}

BigInt ToySystem::code() const {
  std::string s = canonical_serialization();
  BigInt code = 1;  // leading marker byte keeps codes length-monotone
  for (unsigned char b : s) code = code * 256 + b;
  return code;
}

std::optional<ToySystem> ToySystem::from_code(const BigInt& code) {
  std::string bytes;
  BigInt rest = code;
  while (rest > 0) {
    bytes.push_back(static_cast<char>(static_cast<unsigned>(rest % 256)));
    rest /= 256;
  }
  std::reverse(bytes.begin(), bytes.end());
  if (bytes.empty() || bytes[0] != '\x01') return std::nullopt;
  std::string s = bytes.substr(1);

  constexpr std::string_view head = "system{grants=[";
  if (s.rfind(head, 0) != 0) return std::nullopt;
  auto mid = s.find("];rules=[");
  if (mid == std::string::npos || s.substr(s.size() - 2) != "]}") return std::nullopt;
  std::string grants_part = s.substr(head.size(), mid - head.size());
  std::string rules_part = s.substr(mid + 9, s.size() - 2 - (mid + 9));

  auto split = [](const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0, depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || (text[i] == ',' && depth == 0)) {
        if (i > start) out.push_back(text.substr(start, i - start));
        start = i + 1;
      } else if (text[i] == '(') {
        ++depth;
      } else if (text[i] == ')') {
        if (depth == 0) return std::optional<std::vector<std::string>>{};
        --depth;
      }
    }
    return std::optional(out);
  };

  auto grants = split(grants_part);
  auto rule_names = split(rules_part);
  if (!grants || !rule_names) return std::nullopt;
  ToySystem sys;
  for (auto& g : *grants) sys.grants.insert(std::move(g));
  for (const auto& n : *rule_names) {
    auto r = rule_from_name(n);
    if (!r) return std::nullopt;
    sys.rules.insert(*r);
  }
  if (sys.canonical_serialization() != s) return std::nullopt;  // not canonical
  return sys;
}

nlohmann::json ToySystem::to_json() const {
  nlohmann::json j;
  j["grants"] = std::vector<std::string>(grants.begin(), grants.end());
  std::vector<std::string> names;
  for (Rule r : rules) names.push_back(rule_name(r));
  std::sort(names.begin(), names.end());
  j["rules"] = names;
  j["version"] = "stratum-chain/1";
  return j;
}

ToySystem ToySystem::from_json(const nlohmann::json& j) {
  ToySystem sys;
  if (!j.is_object() || !j.contains("grants") || !j.contains("rules"))
    throw ParseError("toy system JSON needs 'grants' and 'rules'");
  for (const auto& g : j.at("grants")) sys.grants.insert(g.get<std::string>());
  for (const auto& n : j.at("rules")) {
    auto r = rule_from_name(n.get<std::string>());
    if (!r) throw ParseError("unknown rule '" + n.get<std::string>() + "'");
    sys.rules.insert(*r);
  }
  return sys;
}

// --- rational universe ----------------------------------------------------------

namespace {

std::mutex g_universe_mu;
std::map<unsigned, std::vector<Ident>> g_universe_cache;

void append_integers_of_length(std::vector<std::string>& out, unsigned len) {
  if (len == 1) {
    for (char c = '0'; c <= '9'; ++c) out.push_back(std::string(1, c));
    return;
  }
  // positive: first digit 1..9
  BigInt lo = pow10(len - 1), hi = pow10(len);
  for (BigInt v = lo; v < hi; ++v) out.push_back(v.str());
  // negative: '-' + (len-1) digits
  if (len >= 2) {
    BigInt nlo = (len == 2) ? 1 : pow10(len - 2);
    BigInt nhi = pow10(len - 1);
    for (BigInt v = nlo; v < nhi; ++v) out.push_back("-" + v.str());
  }
}

void append_fractions_of_length(std::vector<std::string>& out, unsigned len) {
  // p/q with q >= 2, gcd(|p|, q) = 1; '-' counts toward the length
  for (unsigned sign = 0; sign < 2; ++sign) {
    unsigned body = len - sign;
    if (body < 3) continue;
    for (unsigned lp = 1; lp + 2 <= body; ++lp) {
      unsigned lq = body - lp - 1;
      BigInt plo = (lp == 1) ? 1 : pow10(lp - 1), phi = pow10(lp);
      BigInt qlo = (lq == 1) ? 2 : pow10(lq - 1), qhi = pow10(lq);
      for (BigInt p = plo; p < phi; ++p)
        for (BigInt q = qlo; q < qhi; ++q)
          if (boost::multiprecision::gcd(p, q) == 1)
            out.push_back((sign ? "-" : "") + p.str() + "/" + q.str());
    }
  }
}

}  // namespace

namespace {
std::mutex g_layer_mu;
std::map<unsigned, std::vector<Ident>> g_layer_cache;
}  // namespace

const std::vector<Ident>& rational_layer(unsigned len) {
  std::lock_guard<std::mutex> lock(g_layer_mu);
  auto it = g_layer_cache.find(len);
  if (it != g_layer_cache.end()) return it->second;
  std::vector<std::string> texts;
  append_integers_of_length(texts, len);
  append_fractions_of_length(texts, len);
  std::sort(texts.begin(), texts.end());
  std::vector<Ident> layer;
  layer.reserve(texts.size());
  for (auto& t : texts) layer.push_back(Ident{len, std::move(t)});
  return g_layer_cache.emplace(len, std::move(layer)).first->second;
}

const std::vector<Ident>& rational_universe(unsigned budget) {
  std::lock_guard<std::mutex> lock(g_universe_mu);
  auto it = g_universe_cache.find(budget);
  if (it != g_universe_cache.end()) return it->second;
  std::vector<Ident> universe;
  for (unsigned len = 1; len <= budget; ++len) {
    const auto& layer = rational_layer(len);
    universe.insert(universe.end(), layer.begin(), layer.end());
  }
  return g_universe_cache.emplace(budget, std::move(universe)).first->second;
}

// --- definable sets ---------------------------------------------------------------

bool DefinableSet::contains(const std::string& id) const {
  Ident ident = Ident::of(id);
  if (ident.size > budget) return false;
  if (all_rationals && is_rational_ident(id)) return true;
  return items.count(ident) > 0;
}

bool DefinableSet::subset_of(const DefinableSet& other) const {
  if (budget != other.budget)
    throw InvalidInput("DefinableSet: comparing sets with different budgets");
  if (all_rationals && !other.all_rationals) {
    for (const auto& r : rational_universe(budget))
      if (!other.items.count(r)) return false;
  }
  for (const auto& it : items) {
    if (other.all_rationals && is_rational_ident(it.text)) continue;
    if (!other.items.count(it)) return false;
  }
  return true;
}

bool DefinableSet::operator==(const DefinableSet& other) const {
  return subset_of(other) && other.subset_of(*this);
}

std::size_t DefinableSet::size() const {
  return items.size() + (all_rationals ? rational_universe(budget).size() : 0);
}

std::optional<std::string> DefinableSet::min_missing_from(
    const DefinableSet& smaller) const {
  std::optional<Ident> best;
  for (const auto& it : items) {
    if (!smaller.contains(it.text)) {
      best = it;
      break;  // items are (size, bytes)-ordered
    }
  }
  if (all_rationals && !smaller.all_rationals) {
    for (const auto& r : rational_universe(budget)) {
      if (best && *best < r) break;
      if (!smaller.items.count(r)) {
        if (!best || r < *best) best = r;
        break;
      }
    }
  }
  if (!best) return std::nullopt;
  return best->text;
}

std::vector<std::string> DefinableSet::to_sorted_ids() const {
  std::vector<Ident> all(items.begin(), items.end());
  if (all_rationals) {
    const auto& uni = rational_universe(budget);
    all.insert(all.end(), uni.begin(), uni.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<std::string> out;
  out.reserve(all.size());
  for (auto& i : all) out.push_back(i.text);
  return out;
}

DefinableSet definable_set(const ToySystem& sys, unsigned budget) {
  if (budget < 1) throw InvalidInput("definable_set: budget must be >= 1");
  DefinableSet out;
  out.budget = budget;
  out.all_rationals = sys.rules.count(Rule::RationalClosure) > 0;

  auto insert = [&out, budget](const std::string& id) -> bool {
    Ident ident = Ident::of(id);
    if (ident.size > budget) return false;
    if (out.all_rationals && is_rational_ident(id)) return false;  // subsumed
    return out.items.insert(std::move(ident)).second;
  };

  for (const auto& g : sys.grants) insert(g);

  unsigned oracle_max = 0;
  if (sys.rules.count(Rule::OracleLevel1)) oracle_max = std::max(oracle_max, 1u);
  if (sys.rules.count(Rule::OracleLevel2)) oracle_max = std::max(oracle_max, 2u);
  if (sys.rules.count(Rule::OracleLevel3)) oracle_max = std::max(oracle_max, 3u);
  for (unsigned j = 1; j <= oracle_max; ++j)
    insert("witness_real_" + std::to_string(j));

  if (sys.rules.count(Rule::FieldOpsClosure)) {
    insert("0");
    insert("1");
    // Operand pool: current members, plus the rational universe when the
    // rational closure is on (only sizes that can fit inside a composite).
    std::vector<Ident> pool(out.items.begin(), out.items.end());
    if (out.all_rationals && budget >= 3) {
      const auto& operands = rational_universe(budget - 2);
      pool.insert(pool.end(), operands.begin(), operands.end());
    } else if (out.all_rationals) {
      pool.push_back(Ident{1, "0"});
      pool.push_back(Ident{1, "1"});
    }
    std::vector<Ident> fresh = pool;
    while (!fresh.empty()) {
      std::vector<Ident> added;
      auto note = [&](const std::string& id) {
        if (insert(id)) added.push_back(Ident::of(id));
      };
      for (const auto& a : fresh) {
        if (a.size + 1 <= budget) note(neg_ident(a.text));
        for (const auto& b : pool) {
          if (a.size + b.size + 1 > budget) continue;
          note(plus_ident(a.text, b.text));
          note(times_ident(a.text, b.text));
        }
      }
      pool.insert(pool.end(), added.begin(), added.end());
      fresh = std::move(added);
    }
  }
  return out;
}

// --- chains ------------------------------------------------------------------------

Chain Chain::explicit_prefix(std::vector<ToySystem> systems) {
  Chain c;
  c.levels_ = static_cast<unsigned>(systems.size());
  c.prefix_ = std::move(systems);
  return c;
}

Chain Chain::generated(std::function<ToySystem(unsigned)> gen, unsigned levels) {
  Chain c;
  c.gen_ = std::move(gen);
  c.levels_ = levels;
  return c;
}

ToySystem Chain::system(unsigned level) const {
  if (level >= levels_)
    throw InvalidInput("Chain: level " + std::to_string(level) +
                       " beyond available prefix of " + std::to_string(levels_));
  if (!prefix_.empty()) return prefix_[level];
  return gen_(level);
}

unsigned Chain::levels() const { return levels_; }

nlohmann::json Chain::to_json() const {
  nlohmann::json j;
  std::vector<nlohmann::json> levels;
  for (unsigned i = 0; i < levels_; ++i) {
    auto sj = system(i).to_json();
    sj.erase("version");
    levels.push_back(sj);
  }
  j["levels"] = levels;
  j["version"] = "stratum-chain/1";
  return j;
}

Chain Chain::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("version", "") != std::string("stratum-chain/1"))
    throw ParseError("chain JSON requires version \"stratum-chain/1\"");
  std::vector<ToySystem> systems;
  for (const auto& sj : j.at("levels")) systems.push_back(ToySystem::from_json(sj));
  return explicit_prefix(std::move(systems));
}

nlohmann::json AdmissibilityReport::to_json() const {
  nlohmann::json j;
  j["admissible"] = admissible;
  std::vector<nlohmann::json> step_list;
  for (const auto& s : steps) {
    nlohmann::json sj;
    sj["from"] = s.from;
    sj["selector_increases"] = s.selector_increases;
    sj["inclusion_holds"] = s.inclusion_holds;
    if (s.witness) sj["witness"] = *s.witness;
    step_list.push_back(sj);
  }
  j["steps"] = step_list;
  if (first_failing_step) j["first_failing_step"] = *first_failing_step;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

AdmissibilityReport is_admissible_prefix(const Chain& c, unsigned n, unsigned budget) {
  AdmissibilityReport report;
  report.admissible = true;
  for (unsigned i = 0; i < n; ++i) {
    ToySystem a = c.system(i);
    ToySystem b = c.system(i + 1);
    AdmissibilityStep step;
    step.from = i;
    step.selector_increases = a.code() < b.code();
    DefinableSet da = definable_set(a, budget);
    DefinableSet db = definable_set(b, budget);
    step.inclusion_holds = da.subset_of(db);
    if (step.inclusion_holds) step.witness = db.min_missing_from(da);
    report.steps.push_back(step);
    if (!step.ok() && report.admissible) {
      report.admissible = false;
      report.first_failing_step = i;
      if (!step.selector_increases)
        report.reason = "selector not strictly increasing at step " +
                        std::to_string(i) + "->" + std::to_string(i + 1);
      else if (!step.inclusion_holds)
        report.reason = "strict inclusion fails at step " + std::to_string(i) + "->" +
                        std::to_string(i + 1) + " (lower level loses reals)";
      else
        report.reason = "no new definable real at step " + std::to_string(i) + "->" +
                        std::to_string(i + 1);
    }
  }
  return report;
}

std::optional<std::string> verify_strict_growth(const ToySystem& a, const ToySystem& b,
                                                unsigned budget) {
  DefinableSet da = definable_set(a, budget);
  DefinableSet db = definable_set(b, budget);
  return db.min_missing_from(da);
}

DefinableSet level_set(const Chain& c, unsigned n, unsigned budget) {
  return definable_set(c.system(n), budget);
}

namespace {

DefinableSet union_sets(DefinableSet acc, const DefinableSet& extra) {
  if (acc.budget != extra.budget)
    throw InvalidInput("DefinableSet union: mismatched budgets");
  acc.all_rationals = acc.all_rationals || extra.all_rationals;
  for (const auto& it : extra.items) acc.items.insert(it);
  if (acc.all_rationals) {
    for (auto it = acc.items.begin(); it != acc.items.end();)
      it = is_rational_ident(it->text) ? acc.items.erase(it) : std::next(it);
  }
  return acc;
}

}  // namespace

DefinableSet cumulative_set(const Chain& c, unsigned n, unsigned budget) {
  DefinableSet acc = level_set(c, 0, budget);
  for (unsigned k = 1; k <= n; ++k) acc = union_sets(std::move(acc), level_set(c, k, budget));
  return acc;
}

DefinableSet global_level(const std::vector<Chain>& family, unsigned n, unsigned budget) {
  if (family.empty()) throw InvalidInput("global_level: empty family");
  DefinableSet acc = level_set(family[0], n, budget);
  for (std::size_t i = 1; i < family.size(); ++i)
    acc = union_sets(std::move(acc), level_set(family[i], n, budget));
  return acc;
}

DefinableSet global_cumulative(const std::vector<Chain>& family, unsigned n,
                               unsigned budget) {
  if (family.empty()) throw InvalidInput("global_cumulative: empty family");
  DefinableSet acc = cumulative_set(family[0], n, budget);
  for (std::size_t i = 1; i < family.size(); ++i)
    acc = union_sets(std::move(acc), cumulative_set(family[i], n, budget));
  return acc;
}

Chain build_chain_condition_A(unsigned levels) {
  if (levels > 3)
    throw InvalidInput("build_chain_condition_A: oracle tower supports levels <= 3");
  std::vector<ToySystem> systems;
  for (unsigned k = 0; k <= levels; ++k) {
    ToySystem sys;
    sys.rules.insert(Rule::RationalClosure);
    if (k == 1) sys.rules.insert(Rule::OracleLevel1);
    if (k == 2) sys.rules.insert(Rule::OracleLevel2);
    if (k == 3) sys.rules.insert(Rule::OracleLevel3);
    systems.push_back(std::move(sys));
  }
  return Chain::explicit_prefix(std::move(systems));
}

Chain build_chain_condition_C(const std::vector<std::string>& grant_stream) {
  if (grant_stream.empty())
    throw InvalidInput("build_chain_condition_C: need at least one grant");
  std::vector<ToySystem> systems;
  ToySystem sys;
  sys.rules.insert(Rule::RationalClosure);
  for (const auto& g : grant_stream) {
    sys.grants.insert(g);
    systems.push_back(sys);
  }
  return Chain::explicit_prefix(std::move(systems));
}

bool NoncollapseReport::all_conditions_hold() const {
  return in_c1_level0 && in_c1_cumulative && absent_from_c1_level_n &&
         absent_from_c2_level_n && same_level_n_system && in_global_cumulative &&
         absent_from_global_level && c1_nonadmissible_at_0 && c2_admissible;
}

std::string NoncollapseReport::to_text() const {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::string t;
  t += "noncollapse counterexample at n = " + std::to_string(n) + ", real = " + real_id + "\n";
  t += "  [1] granted at C1 level 0:            " + std::string(yn(in_c1_level0)) + "\n";
  t += "      in cumulative_set(C1, 1):         " + std::string(yn(in_c1_cumulative)) + "\n";
  t += "  [2] absent from level_set(C1, 1):     " + std::string(yn(absent_from_c1_level_n)) + "\n";
  t += "      absent from level_set(C2, 1):     " + std::string(yn(absent_from_c2_level_n)) + "\n";
  t += "  [3] chains share the level-1 system:  " + std::string(yn(same_level_n_system)) + "\n";
  t += "  in global cumulative(1):              " + std::string(yn(in_global_cumulative)) + "\n";
  t += "  absent from global level(1):          " + std::string(yn(absent_from_global_level)) + "\n";
  t += "  C1 non-admissible at step 0->1:       " + std::string(yn(c1_nonadmissible_at_0)) + "\n";
  t += "  C2 admissible:                        " + std::string(yn(c2_admissible)) + "\n";
  t += std::string(all_conditions_hold() ? "all conditions hold" : "CONDITIONS VIOLATED") + "\n";
  return t;
}

nlohmann::json NoncollapseReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "stratum/1";
  j["n"] = n;
  j["real"] = real_id;
  j["in_c1_level0"] = in_c1_level0;
  j["in_c1_cumulative"] = in_c1_cumulative;
  j["absent_from_c1_level_n"] = absent_from_c1_level_n;
  j["absent_from_c2_level_n"] = absent_from_c2_level_n;
  j["same_level_n_system"] = same_level_n_system;
  j["in_global_cumulative"] = in_global_cumulative;
  j["absent_from_global_level"] = absent_from_global_level;
  j["c1_nonadmissible_at_0"] = c1_nonadmissible_at_0;
  j["c2_admissible"] = c2_admissible;
  j["all_conditions_hold"] = all_conditions_hold();
  j["c1"] = c1.to_json();
  j["c2"] = c2.to_json();
  return j;
}

NoncollapseReport counterexample_noncollapse(unsigned budget) {
  // phi: axiom token granting the series real r_4_3; psi_token: an unrelated
  // sentence. Both chains end in the same system F = base + psi_token.
  ToySystem c1_level0{{"r_4_3"}, {Rule::RationalClosure}};
  ToySystem base{{}, {Rule::RationalClosure}};
  ToySystem shared_f{{"psi_token"}, {Rule::RationalClosure}};

  NoncollapseReport report;
  report.n = 1;
  report.real_id = "r_4_3";
  report.c1 = Chain::explicit_prefix({c1_level0, shared_f});
  report.c2 = Chain::explicit_prefix({base, shared_f});

  report.in_c1_level0 = level_set(report.c1, 0, budget).contains("r_4_3");
  report.in_c1_cumulative = cumulative_set(report.c1, 1, budget).contains("r_4_3");
  report.absent_from_c1_level_n = !level_set(report.c1, 1, budget).contains("r_4_3");
  report.absent_from_c2_level_n = !level_set(report.c2, 1, budget).contains("r_4_3");
  report.same_level_n_system = report.c1.system(1) == report.c2.system(1);

  std::vector<Chain> family{report.c1, report.c2};
  report.in_global_cumulative = global_cumulative(family, 1, budget).contains("r_4_3");
  report.absent_from_global_level = !global_level(family, 1, budget).contains("r_4_3");

  auto adm1 = is_admissible_prefix(report.c1, 1, budget);
  report.c1_nonadmissible_at_0 =
      !adm1.admissible && adm1.first_failing_step && *adm1.first_failing_step == 0;
  report.c2_admissible = is_admissible_prefix(report.c2, 1, budget).admissible;
  return report;
}

// --- Cantor-space coding ---------------------------------------------------------

std::uint8_t ChainCode::bit(std::uint64_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (generator) return generator(i) ? 1 : 0;
  throw InvalidInput("ChainCode: bit " + std::to_string(i) + " beyond evidence");
}

std::string ChainCode::to_string01() const {
  std::string s;
  s.reserve(prefix.size());
  for (auto b : prefix) s += b ? '1' : '0';
  return s;
}

ChainCode ChainCode::from_string01(std::string_view bits) {
  ChainCode code;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw ParseError("ChainCode: expected only 0/1 characters");
    code.prefix.push_back(c == '1');
    if (c == '1') ++code.ones_seen;
  }
  return code;
}

ChainCode encode_set_to_bits(const std::vector<std::uint64_t>& increasing_prefix,
                             std::uint64_t bit_length) {
  for (std::size_t i = 1; i < increasing_prefix.size(); ++i)
    if (increasing_prefix[i] <= increasing_prefix[i - 1])
      throw InvalidInput("encode_set_to_bits: enumerator not strictly increasing at position " +
                         std::to_string(i));
  std::uint64_t len = bit_length;
  if (!increasing_prefix.empty())
    len = std::max(len, increasing_prefix.back() + 1);
  ChainCode code;
  code.prefix.assign(len, 0);
  for (auto n : increasing_prefix) {
    code.prefix[n] = 1;
    ++code.ones_seen;
  }
  return code;
}

DecodeOutcome decode_bits_to_set(const ChainCode& code, std::uint64_t horizon) {
  std::uint64_t window = horizon;
  if (window == 0) window = code.prefix.size();
  if (!code.generator) window = std::min<std::uint64_t>(window, code.prefix.size());

  DecodeOutcome out;
  std::vector<std::uint64_t> ones;
  for (std::uint64_t i = 0; i < window; ++i)
    if (code.bit(i)) ones.push_back(i);
  out.ones_seen = ones.size();
  out.scanned_bits = window;
  // certify only elements with at least two later ones inside the window
  if (ones.size() >= 3)
    out.elements.assign(ones.begin(), ones.end() - 2);
  out.insufficient_evidence = out.elements.empty();
  return out;
}

}  // namespace stratum
