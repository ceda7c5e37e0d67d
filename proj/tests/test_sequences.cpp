#include <doctest.h>

#include "syncsum/sequences.hpp"

using namespace syncsum;
using namespace syncsum::sequences;
using numeration::System;

TEST_CASE("morphisms") {
  Morphism tm{{{0, 1}, {1, 0}}, {0, 1}};
  auto t = dfao_from_morphism(tm, 0);
  const int expected[] = {0, 1, 1, 0, 1, 0, 0, 1, 1, 0};
  for (int n = 0; n < 10; ++n) CHECK(eval(t, static_cast<std::uint64_t>(n)) == expected[n]);
  CHECK(isomorphic(minimize(t), minimize(catalog("T"))));

  Morphism leech{{{0, 1, 2, 1, 0, 2, 1, 2, 0, 1, 2, 1, 0},
                  {1, 2, 0, 2, 1, 0, 2, 0, 1, 2, 0, 2, 1},
                  {2, 0, 1, 0, 2, 1, 0, 1, 2, 0, 1, 0, 2}},
                 {0, 1, 2}};
  auto le = dfao_from_morphism(leech, 0);
  const int image[] = {0, 1, 2, 1, 0, 2, 1, 2, 0, 1, 2, 1, 0};
  for (int n = 0; n < 13; ++n) CHECK(eval(le, static_cast<std::uint64_t>(n)) == image[n]);

  Morphism zero{{{0, 0}}, {0}};
  auto z = dfao_from_morphism(zero, 0);
  for (std::uint64_t n = 0; n < 100; ++n) CHECK(eval(z, n) == 0);

  Morphism not_prolongable{{{1, 0}, {0, 1}}, {0, 1}};
  CHECK_THROWS_AS(dfao_from_morphism(not_prolongable, 0), Error);
  Morphism ragged{{{0, 1}, {1}}, {0, 1}};
  CHECK_THROWS_AS(dfao_from_morphism(ragged, 0), Error);
}

TEST_CASE("catalog spot values") {
  CHECK(eval(catalog("T"), std::uint64_t{7}) == 1);
  CHECK(eval(catalog("CA"), std::uint64_t{0}) == 1);
  CHECK(eval(catalog("ftm"), std::uint64_t{16}) == 0);
  CHECK(catalog("T").num_states() == 2);
  const int ftm[] = {0, 1, 1, 1, 0, 1, 0};
  for (int n = 0; n < 7; ++n) CHECK(eval(catalog("ftm"), static_cast<std::uint64_t>(n)) == ftm[n]);
  CHECK(eval(catalog("sb"), std::uint64_t{4}) == 0);
  CHECK(eval(catalog("sb"), std::uint64_t{6}) == 1);
  CHECK(catalog("gbar").system.order() == numeration::DigitOrder::lsd);
  CHECK(catalog("ftm").system.is_fibonacci());
  CHECK(canonical_name("le") == "le");
  CHECK(canonical_name("t") == "T");
  CHECK_THROWS_WITH_AS(catalog("nope"), doctest::Contains("catalog: T CA sb"), Error);
}

TEST_CASE("oracles") {
  CHECK(oracle("rs", 3) == 1);
  CHECK(oracle("pf", 5) == 1);
  CHECK(oracle("pf", 2) == 1);
  CHECK(oracle("gbar", 4) == 1);
  CHECK(running_sum_oracle("T", 8) == 5);
  CHECK(running_sum_oracle("T", 0) == 0);
  CHECK(running_sum_oracle("le", 14) == 16);
  auto sums = running_sums("T", 9);
  const std::uint64_t listing[] = {0, 1, 2, 2, 3, 3, 3, 4, 5, 5};
  for (int n = 0; n < 10; ++n) CHECK(sums[static_cast<std::size_t>(n)] == listing[n]);
}

TEST_CASE("every catalog DFAO matches its oracle below 10^4") {
  // The full 10^5 sweep lives in the acceptance suite.
  for (const auto& name : catalog_names()) {
    const auto d = catalog(name);
    for (std::uint64_t n = 0; n < 10000; ++n) {
      REQUIRE_MESSAGE(eval(d, n) == oracle(name, n), name << " at " << n);
    }
    CHECK(eval(d, BigInt(12345)) == oracle(name, 12345));
  }
}

TEST_CASE("index and sum views agree at oracle level") {
  for (const auto& name : catalog_names()) {
    if (!is_binary(name)) continue;
    auto sums = running_sums(name, 9999);
    std::vector<std::uint64_t> ones;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      if (oracle(name, i) == 1) ones.push_back(i);
    }
    for (std::size_t k = 0; k < ones.size(); ++k) {
      auto first = std::find(sums.begin(), sums.end(), k + 1);
      REQUIRE(first != sums.end());
      CHECK(static_cast<std::uint64_t>(first - sums.begin()) == ones[k]);
    }
  }
}

TEST_CASE("msd form of an lsd machine") {
  auto g = catalog("gbar");
  auto m = msd_form(g);
  CHECK(m.system == System::base(2));
  for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(eval(m, n) == eval(g, n));
}

TEST_CASE("acceptors") {
  for (const auto& name : {"T", "gbar", "ftm", "le"}) {
    auto d = catalog(name);
    for (int value : d.output_values()) {
      auto a = acceptor(d, value);
      automata::Alphabet ab({d.system.as_msd()});
      for (std::uint64_t n = 0; n < 2000; ++n) {
        std::vector<BigInt> v{BigInt(n)};
        auto w = ab.encode_values(v, 20);
        REQUIRE(a.accepts(w) == (oracle(name, n) == value));
      }
    }
  }
}

TEST_CASE("DFAO text round trip") {
  for (const auto& name : catalog_names()) {
    auto d = catalog(name);
    auto again = parse_dfao(to_string(d));
    CHECK(to_string(again) == to_string(d));
  }
}
