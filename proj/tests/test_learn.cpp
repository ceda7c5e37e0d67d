#include <doctest.h>

#include "syncsum/learn.hpp"

using namespace syncsum;
using namespace syncsum::learn;
using numeration::System;

namespace {

std::vector<BigInt> pair(unsigned long n, unsigned long s) { return {BigInt(n), BigInt(s)}; }

}  // namespace

TEST_CASE("tmsum is learned and proved") {
  auto oracle = MembershipOracle::for_sequence("T");
  auto result = learn_sync(oracle);
  REQUIRE(result.outcome == Outcome::proved);
  REQUIRE(result.predicate);
  CHECK(result.predicate->accepts(pair(8, 5)));
  CHECK(result.reports.size() == 3);
  for (const auto& r : result.reports) CHECK(r.verdict);
  CHECK(result.stats.rounds >= 1);
  CHECK(result.stats.membership_queries > 0);

  // Independent replay against the scan oracle.
  const auto sums = sequences::running_sums("T", (1u << 16) - 1);
  for (unsigned long n = 0; n < (1u << 16); ++n) {
    REQUIRE(result.predicate->accepts(pair(n, sums[n])));
    REQUIRE_FALSE(result.predicate->accepts(pair(n, sums[n] + 1)));
  }
  for (std::size_t i = 1; i < result.stats.state_history.size(); ++i) {
    CHECK(result.stats.state_history[i - 1] <= result.stats.state_history[i]);
  }
}

TEST_CASE("cansum uses a base-3 index track and a base-2 sum track") {
  auto oracle = MembershipOracle::for_sequence("CA");
  CHECK(oracle.tracks()[0].system == System::base(3));
  CHECK(oracle.tracks()[1].system == System::base(2));
  auto result = learn_sync(oracle);
  CHECK(result.outcome == Outcome::proved);
  const auto sums = sequences::running_sums("CA", 20000);
  for (unsigned long n = 0; n <= 20000; ++n) REQUIRE(result.predicate->accepts(pair(n, sums[n])));
}

TEST_CASE("non-synchronised sums diverge") {
  for (const auto& name : {"rs", "bs"}) {
    auto oracle = MembershipOracle::for_sequence(name);
    LearnOptions options;
    options.max_states = 64;
    auto result = learn_sync(oracle, options);
    CHECK(result.outcome == Outcome::diverged);
    REQUIRE(result.last_counterexample);
    auto trace = counterexample_trace(oracle, result, *result.last_counterexample);
    CHECK(trace.oracle != trace.hypothesis);
    CHECK(trace.text.find("oracle") != std::string::npos);
  }
}

TEST_CASE("counterexample traces") {
  auto oracle = MembershipOracle::for_sequence("T");
  automata::Dfa everything = automata::all_words(oracle.alphabet());
  auto w = oracle.alphabet().encode_values(pair(2, 1));
  auto trace = counterexample_trace(oracle, everything, w);
  CHECK(trace.values == pair(2, 1));
  CHECK_FALSE(trace.oracle);
  CHECK(trace.hypothesis);

  auto result = learn_sync(oracle);
  for (unsigned long n = 0; n < 40; ++n) {
    auto word = oracle.alphabet().encode_values(pair(n, oracle.value(n).get_ui()), 8);
    auto t = counterexample_trace(oracle, result, word);
    CHECK(t.oracle == t.hypothesis);
  }
}

TEST_CASE("transcripts are reproducible") {
  auto a = MembershipOracle::for_sequence("gbar");
  auto b = MembershipOracle::for_sequence("gbar");
  auto first = learn_sync(a);
  auto second = learn_sync(b);
  CHECK(first.transcript == second.transcript);
  LearnOptions other;
  other.seed = 99;
  auto c = MembershipOracle::for_sequence("gbar");
  CHECK(learn_sync(c, other).outcome == Outcome::proved);
}

TEST_CASE("Zeckendorf relations are evaluation-verified") {
  const auto fib = System::fibonacci();
  MembershipOracle identity(linrep::value_linrep(fib), fib, fib);
  auto result = learn_sync(identity);
  CHECK(result.outcome == Outcome::evaluation_verified);
  CHECK(result.predicate->accepts(pair(16, 16)));
  CHECK_FALSE(result.predicate->accepts(pair(16, 15)));
}

TEST_CASE("option and track errors") {
  auto oracle = MembershipOracle::for_sequence("T");
  LearnOptions bad;
  bad.max_states = 0;
  CHECK_THROWS_AS(learn_sync(oracle, bad), Error);
  bad.max_states = 4;
  bad.test_len = 0;
  CHECK_THROWS_AS(learn_sync(oracle, bad), Error);
  CHECK_THROWS_AS(MembershipOracle(linrep::reference_linrep("tmsum"), System::base(3), System::base(2)), Error);
  LearnOptions tiny;
  tiny.max_states = 2;
  CHECK(learn_sync(oracle, tiny).outcome == Outcome::diverged);
}
