#include <doctest.h>

#include "syncsum/linrep.hpp"

using namespace syncsum;
using namespace syncsum::linrep;
using numeration::System;

namespace {

BigInt pattern_n(const numeration::PatternNumeral& p, std::size_t r) {
  return numeration::from_digits(numeration::expand_pattern(p, r));
}

}  // namespace

TEST_CASE("derived representations match running-sum oracles") {
  for (const auto& name : sequences::catalog_names()) {
    const auto d = sequences::catalog(name);
    const auto lr = derive_running_sum_linrep(d);
    const auto sums = sequences::running_sums(name, 3000);
    for (std::uint64_t n = 0; n <= 3000; ++n) {
      REQUIRE_MESSAGE(eval_linrep(lr, n) == sums[n], name << " at " << n);
    }
  }
}

TEST_CASE("Leech targets share a skeleton") {
  const auto le = sequences::catalog("le");
  const auto a = derive_sum_linrep(le, 1);
  const auto b = derive_sum_linrep(le, 2);
  CHECK(a.v() == b.v());
  CHECK(a.mats() == b.mats());
  CHECK(a.w() != b.w());
  const auto both = combine(a, b, 1, 2);
  CHECK(both.dimension() == a.dimension());
  CHECK(eval_linrep(both, 183) == 186);
  CHECK(eval_linrep(both, 14) == 16);
}

TEST_CASE("constant-zero sequence") {
  sequences::Dfao zero{System::base(2), 0, {0, 0}, {0}};
  const auto lr = derive_sum_linrep(zero, 1);
  for (unsigned n = 0; n < 100; ++n) CHECK(eval_linrep(lr, n) == 0);
}

TEST_CASE("shipped reference representations") {
  const auto tmsum = reference_linrep("tmsum");
  CHECK(eval_linrep(tmsum, 8) == 5);
  CHECK(eval_linrep(tmsum, 0) == dot(tmsum.v(), tmsum.w()).get_num());
  const auto le = combine(reference_linrep("le1"), reference_linrep("le2"), 1, 2);
  CHECK(eval_linrep(le, 14) == 16);
  CHECK(eval_linrep(le, 183) == 186);
  CHECK_THROWS_AS(eval_linrep(le, 2), Error);  // only M_1 is shipped

  const std::vector<std::pair<std::string, std::string>> full{
      {"tmsum", "T"}, {"pd", "pd"}, {"mw", "mw"}, {"pf", "pf"}, {"bs", "bs"}, {"rs", "rs"}, {"ftm", "ftm"}};
  for (const auto& [fixture, seq] : full) {
    const auto ref = reference_linrep(fixture);
    const auto derived = derive_running_sum_linrep(sequences::catalog(seq));
    for (unsigned n = 0; n <= 2000; ++n) REQUIRE_MESSAGE(eval_linrep(ref, n) == eval_linrep(derived, n), fixture);
  }
}

TEST_CASE("combine") {
  const auto t = reference_linrep("tmsum");
  const auto zero = combine(t, t, 1, -1);
  for (unsigned n = 0; n < 200; ++n) CHECK(eval_linrep(zero, n) == 0);
  const auto plus = combine(t, constant_linrep(System::base(2), 0), 1, 5);
  for (unsigned n = 0; n < 200; ++n) CHECK(eval_linrep(plus, n) == eval_linrep(t, n));
  CHECK_THROWS_AS(combine(t, reference_linrep("mw"), 1, 1), Error);
}

TEST_CASE("value representation") {
  for (auto sys : {System::base(2), System::base(3), System::base(13), System::fibonacci()}) {
    const auto lr = value_linrep(sys);
    for (unsigned n = 0; n < 3000; ++n) REQUIRE(eval_linrep(lr, n) == n);
  }
}

TEST_CASE("pattern values") {
  const auto pd = reference_linrep("pd");
  const auto p = numeration::parse_pattern("(10)^r 1", System::base(2));
  CHECK(pattern_values(pd, p, 0) == 1);
  const auto mw = reference_linrep("mw");
  const auto q = numeration::parse_pattern("(11)^r", System::base(3));
  CHECK(pattern_values(mw, q, 1) == 1);
  const auto ftm = reference_linrep("ftm");
  const auto f = numeration::parse_pattern("(100100)^r", System::fibonacci());
  CHECK(pattern_values(ftm, f, 1) == 7);
  for (const auto& [lr, pat] : {std::pair{pd, p}, std::pair{mw, q}, std::pair{ftm, f}}) {
    const auto form = pattern_matrix(lr, pat);
    for (std::size_t r = 0; r <= 12; ++r) CHECK(pattern_value(form, r) == BigRat(eval_linrep(lr, pattern_n(pat, r))));
  }
  const auto le = combine(reference_linrep("le1"), reference_linrep("le2"), 1, 2);
  const auto l = numeration::parse_pattern("(1)^r", System::base(13));
  const long values[] = {0, 1, 16, 186, 2377, 30943, 402240};
  for (std::size_t m = 0; m < 7; ++m) CHECK(pattern_values(le, l, m) == values[m]);
}

TEST_CASE("large inputs fall back to exact arithmetic") {
  const auto lr = reference_linrep("tmsum");
  BigInt n = 1;
  n <<= 200;
  // sum_T(2^200) = 2^199 + 1 (the 1 comes from T(2^200) = 1).
  BigInt expected = 1;
  expected <<= 199;
  expected += 1;
  CHECK(eval_linrep(lr, n) == expected);
}

TEST_CASE("JSON round trip and errors") {
  for (const auto& name : reference_linrep_names()) {
    const auto lr = reference_linrep(name);
    const auto again = from_json(to_json(lr));
    CHECK(again.v() == lr.v());
    CHECK(again.w() == lr.w());
    CHECK(again.mats() == lr.mats());
  }
  const auto half = from_json(R"({"system":"msd_2","v":["1/2"],"mats":{"0":[["1"]],"1":[["2"]]},"w":["1"]})");
  CHECK(half.eval_word(std::vector<std::uint8_t>{1}) == BigRat(1));
  CHECK_THROWS_AS(from_json("{}"), Error);
  CHECK_THROWS_AS(from_json(R"({"system":"msd_2","v":["1"],"mats":{"0":[["1","0"]]},"w":["1"]})"), Error);
  CHECK_THROWS_AS(from_json(R"({"system":"msd_2","v":["1"],"mats":{"5":[["1"]]},"w":["1"]})"), Error);
  CHECK_THROWS_AS(reference_linrep("nope"), Error);
}
