#include <doctest.h>

#include "stratum/dcomp.hpp"
#include "stratum/errors.hpp"

using stratum::DCompResult;
using stratum::DeltaVerdict;
using stratum::DStatus;
using stratum::Rational;

TEST_CASE("descriptor enumeration is ordered and prefix-stable") {
  auto small = stratum::enumerate_descriptors(0, 50);
  auto larger = stratum::enumerate_descriptors(0, 200);
  REQUIRE(small.size() == 50);
  REQUIRE(larger.size() == 200);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == larger[i]);
  // (length, bytes) order
  for (std::size_t i = 1; i < larger.size(); ++i) {
    bool ordered = larger[i - 1].size() < larger[i].size() ||
                   (larger[i - 1].size() == larger[i].size() && larger[i - 1] < larger[i]);
    CHECK(ordered);
  }
  CHECK(larger[0] == "rational 0");

  auto level1 = stratum::enumerate_descriptors(1, 2000);
  CHECK(level1[0] == "heron");
  for (std::size_t i = 1; i < level1.size(); ++i) {
    bool ordered = level1[i - 1].size() < level1[i].size() ||
                   (level1[i - 1].size() == level1[i].size() && level1[i - 1] < level1[i]);
    CHECK(ordered);
  }

  CHECK(stratum::enumerate_descriptors(2, 100) ==
        std::vector<std::string>{"jump-sum(1)", "specker-limit"});
  CHECK(stratum::enumerate_descriptors(3, 100) ==
        std::vector<std::string>{"jump-sum(2)"});
}

TEST_CASE("replay") {
  auto heron = stratum::replay_descriptor("heron");
  REQUIRE(heron.has_value());
  REQUIRE(std::holds_alternative<stratum::CReal>(*heron));
  CHECK(stratum::to_decimal(std::get<stratum::CReal>(*heron), 10) == "1.4142135623");

  auto composite = stratum::replay_descriptor("sin(mul(heron,rational 1/6))");
  REQUIRE(composite.has_value());
  CHECK(stratum::to_decimal(std::get<stratum::CReal>(*composite), 10) == "0.2335258863");

  auto oracle = stratum::replay_descriptor("jump-sum(1)");
  REQUIRE(oracle.has_value());
  CHECK(std::holds_alternative<stratum::OracleReal>(*oracle));

  CHECK_FALSE(stratum::replay_descriptor("nonsense").has_value());
  CHECK_FALSE(stratum::replay_descriptor("rational 2/4").has_value());
  CHECK_FALSE(stratum::replay_descriptor("sin(rational 5)").has_value());  // domain
}

TEST_CASE("dcomp on rational catalog entries") {
  for (const char* id : {"one", "three_quarters", "r_4_3"}) {
    auto result = stratum::dcomp(id);
    CAPTURE(id);
    CHECK(result.level == 0);
    CHECK(result.status == DStatus::exact);
  }
  CHECK(stratum::dcomp("one").sigma == "rational 1");
  CHECK(stratum::dcomp("three_quarters").sigma == "rational 3/4");
  CHECK(stratum::dcomp("r_4_3").sigma == "rational 4/3");
}

TEST_CASE("dcomp on the computable constants") {
  auto sqrt2_result = stratum::dcomp("sqrt2");
  CHECK(sqrt2_result.level == 1);
  CHECK(sqrt2_result.sigma == "heron");
  CHECK(sqrt2_result.status == DStatus::exact);

  auto pi_result = stratum::dcomp("pi");
  CHECK(pi_result.level == 1);
  CHECK(pi_result.sigma == "leibniz-series+alt-tail-modulus");
  CHECK(pi_result.status == DStatus::exact);

  auto e_result = stratum::dcomp("e");
  CHECK(e_result.level == 1);
  CHECK(e_result.sigma == "factorial-series+tail-modulus");
  CHECK(e_result.status == DStatus::exact);

  auto sin_result = stratum::dcomp("sin_sqrt2_over_6");
  CHECK(sin_result.level == 1);
  CHECK(sin_result.sigma == "sin(mul(heron,rational 1/6))");
  CHECK(sin_result.status == DStatus::exact);
}

TEST_CASE("dcomp on oracle-level entries is an upper bound") {
  auto w1 = stratum::dcomp("witness_real_1");
  CHECK(w1.level == 2);
  CHECK(w1.sigma == "jump-sum(1)");
  CHECK(w1.status == DStatus::upper_bound);
  CHECK(w1.budget_used >= 2 * stratum::kDefaultBudget);  // levels 0 and 1 exhausted

  auto w2 = stratum::dcomp("witness_real_2");
  CHECK(w2.level == 3);
  CHECK(w2.sigma == "jump-sum(2)");
  CHECK(w2.status == DStatus::upper_bound);

  auto sp = stratum::dcomp("specker_limit");
  CHECK(sp.level == 2);
  CHECK(sp.status == DStatus::upper_bound);
}

TEST_CASE("dcomp rejects unknown and non-constructive ids") {
  CHECK_THROWS_AS(stratum::dcomp("no_such_thing"), stratum::InvalidInput);
  CHECK_THROWS_AS(stratum::dcomp("hamel_basis"), stratum::InvalidInput);
}

TEST_CASE("witness validity: replay matches the constructor") {
  for (const char* id : {"sqrt2", "pi", "e", "sin_sqrt2_over_6"}) {
    auto result = stratum::dcomp(id);
    auto replayed = stratum::replay_descriptor(result.sigma);
    REQUIRE(replayed.has_value());
    const auto* entry = stratum::Catalog::standard().find(id);
    auto value = entry->constructor();
    Rational diff = std::get<stratum::CReal>(*replayed).approximant(22) -
                    std::get<stratum::CReal>(value).approximant(22);
    CAPTURE(id);
    CHECK(diff.abs() <= Rational::pow2(-20));
  }
}

TEST_CASE("minimality soundness: lower-level re-search finds nothing") {
  for (const char* id : {"sqrt2", "pi", "e"}) {
    auto result = stratum::dcomp(id);
    REQUIRE(result.level == 1);
    // every level-0 descriptor the budget covers fails to match
    const auto* entry = stratum::Catalog::standard().find(id);
    auto value = entry->constructor();
    const auto& real = std::get<stratum::CReal>(value);
    for (const auto& sigma : stratum::enumerate_descriptors(0, 3000)) {
      auto q = Rational::parse(sigma.substr(9));
      REQUIRE(q.has_value());
      CHECK(stratum::cmp_at(real, stratum::from_rational(*q), 30) !=
            stratum::Cmp::indistinguishable);
    }
  }
}

TEST_CASE("budget monotonicity over doubling budgets") {
  for (const char* id : {"sqrt2", "pi", "witness_real_1", "r_4_3"}) {
    unsigned prev_level = stratum::kLadderLevels + 1;
    for (std::uint64_t budget : {25000ULL, 50000ULL, 100000ULL, 200000ULL}) {
      auto result = stratum::dcomp(id, budget);
      unsigned level = result.resolved() ? result.level : stratum::kLadderLevels;
      CAPTURE(id);
      CAPTURE(budget);
      CHECK(level <= prev_level);
      prev_level = level;
    }
  }
}

TEST_CASE("dcomp is idempotent for a fixed budget") {
  auto a = stratum::dcomp("sin_sqrt2_over_6", 120000);
  auto b = stratum::dcomp("sin_sqrt2_over_6", 120000);
  CHECK(a.level == b.level);
  CHECK(a.sigma == b.sigma);
  CHECK(a.budget_used == b.budget_used);
}

TEST_CASE("delta membership") {
  auto [yes, cert] = stratum::delta_membership("sqrt2", 1);
  CHECK(yes == DeltaVerdict::yes);
  CHECK(cert.sigma == "heron");
  CHECK(stratum::delta_membership("sqrt2", 0).first == DeltaVerdict::no);
  CHECK(stratum::delta_membership("witness_real_1", 2).first ==
        DeltaVerdict::unconfirmed);
}

TEST_CASE("layer table buckets and consistency") {
  auto table = stratum::layer_table();
  auto find = [&table](const std::string& id) -> const stratum::LayerRow* {
    for (const auto& row : table.rows)
      if (row.id == id) return &row;
    return nullptr;
  };
  for (const char* id : {"one", "three_quarters", "r_4_3"})
    CHECK(find(id)->result.level == 0);
  for (const char* id : {"sqrt2", "pi", "e", "sin_sqrt2_over_6"})
    CHECK(find(id)->result.level == 1);
  CHECK(find("witness_real_1")->result.level == 2);
  CHECK(find("witness_real_2")->result.level == 3);
  CHECK(find("hamel_basis")->kind == stratum::CatalogEntry::Kind::excluded);
  CHECK(find("random_real")->kind == stratum::CatalogEntry::Kind::excluded);
  CHECK(find("feigenbaum_delta")->kind == stratum::CatalogEntry::Kind::out_of_scope);
  // advisory level tags never undercut resolved degrees
  for (const auto& row : table.rows) CHECK_FALSE(row.advisory_undercuts);

  auto text = table.to_text();
  CHECK(text.find("Delta_0") != std::string::npos);
  CHECK(text.find("hamel_basis") != std::string::npos);
  auto j = table.to_json();
  CHECK(j["schema"] == "stratum/1");
}
