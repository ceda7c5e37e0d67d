#include <doctest.h>

#include <json.hpp>

#include "syncsum/common.hpp"
#include "syncsum/reproduce.hpp"

using namespace syncsum;

TEST_CASE("groups are listed in run order") {
  const auto& names = reproduce::group_names();
  REQUIRE(names.size() == 14);
  CHECK(names.front() == "eval");
  CHECK(names.back() == "growth");
}

TEST_CASE("single groups pass and report their rows") {
  for (const char* group : {"pd", "mw", "pf", "sc", "le", "ftm", "fib-identities", "sum-index"}) {
    CAPTURE(group);
    const auto rows = reproduce::run(group);
    CHECK_FALSE(rows.empty());
    CHECK(reproduce::all_passed(rows));
    for (const auto& r : rows) CHECK(r.group == group);
  }
}

TEST_CASE("the paper-folding lemma row names the r = 0 exception") {
  const auto rows = reproduce::run("pf");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].detail.find("r >= 1") != std::string::npos);
  CHECK(rows[1].detail.find("r=0 gives 0 against 1") != std::string::npos);
}

TEST_CASE("table and JSON output") {
  const auto rows = reproduce::run("fib-identities");
  const auto table = reproduce::format_table(rows);
  CHECK(table.find("PASS") != std::string::npos);
  CHECK(table.find("4/4 rows passed") != std::string::npos);
  const auto j = nlohmann::json::parse(reproduce::to_json(rows));
  REQUIRE(j.size() == 4);
  CHECK(j[0]["group"] == "fib-identities");
  CHECK(j[0]["passed"] == true);
}

TEST_CASE("failing rows are reported, not thrown") {
  std::vector<reproduce::Row> rows{{"g", "a", "claim", true, "", 0}, {"g", "b", "claim", false, "why", 0}};
  CHECK_FALSE(reproduce::all_passed(rows));
  CHECK(reproduce::format_table(rows).find("FAIL") != std::string::npos);
}

TEST_CASE("unknown groups are rejected with the list") {
  CHECK_THROWS_WITH_AS(reproduce::run("5.1"), doctest::Contains("known: all eval"), Error);
}
