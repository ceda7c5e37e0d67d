#include <doctest.h>

#include "syncsum/numeration.hpp"

using namespace syncsum;
using namespace syncsum::numeration;

namespace {

Digits d(std::initializer_list<int> xs) {
  Digits out;
  for (int x : xs) out.push_back(static_cast<std::uint8_t>(x));
  return out;
}

// Independent Zeckendorf: try every no-"11" word of bounded length.
BigInt zeck_value(const Digits& w) {
  BigInt v = 0, a = 1, b = 2;  // weights 1, 2, 3, 5, ...
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it) v += a;
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return v;
}

}  // namespace

TEST_CASE("to_digits basic values") {
  CHECK(to_digits(30, System::base(3)).digits == d({1, 0, 1, 0}));
  CHECK(to_digits(0, System::base(2)).digits.empty());
  CHECK(to_digits(0, System::fibonacci()).digits.empty());
  CHECK(to_digits(16, System::fibonacci()).digits == d({1, 0, 0, 1, 0, 0}));
  CHECK(to_digits(1, System::fibonacci()).digits == d({1}));
  CHECK(to_digits(2, System::fibonacci()).digits == d({1, 0}));
  CHECK(to_digits(3, System::fibonacci()).digits == d({1, 0, 0}));
}

TEST_CASE("from_digits handles padding and rejects bad digits") {
  CHECK(from_digits({System::base(2), d({0, 1, 0, 1, 0})}) == 10);
  CHECK(from_digits({System::base(3), d({1, 0, 1, 0})}) == 30);
  CHECK(from_digits({System::fibonacci(), d({1, 0, 0, 1, 0, 0})}) == 16);
  CHECK_THROWS_AS(from_digits({System::base(2), d({2})}), Error);
  CHECK_THROWS_AS(from_digits({System::fibonacci(), d({1, 1})}), Error);
  CHECK(from_digits({System::fibonacci(), d({1, 1})}, true) == 3);
}

TEST_CASE("round trip for every system up to 10^6") {
  for (auto sys : {System::base(2), System::base(3), System::base(13), System::base(2, DigitOrder::lsd),
                   System::fibonacci()}) {
    for (unsigned long n = 0; n <= 1000000; n += (sys.is_fibonacci() ? 1 : 7)) {
      const auto w = to_digits(n, sys);
      REQUIRE(from_digits(w) == n);
      REQUIRE(is_canonical(w));
    }
  }
}

TEST_CASE("Zeckendorf words avoid 11 and order matches value") {
  // Every no-11 word of length 12 with its value; lexicographic order must match numeric order.
  std::vector<std::pair<Digits, BigInt>> words;
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    if (mask & (mask >> 1)) continue;
    Digits w(12);
    for (int i = 0; i < 12; ++i) w[static_cast<std::size_t>(i)] = (mask >> (11 - i)) & 1;
    words.emplace_back(w, zeck_value(w));
  }
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i + 1 < words.size(); ++i) CHECK(words[i].second < words[i + 1].second);
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(words[i].second == BigInt(static_cast<unsigned long>(i)));
    Digits canon = to_digits(words[i].second, System::fibonacci()).digits;
    Digits padded(12 - canon.size(), 0);
    padded.insert(padded.end(), canon.begin(), canon.end());
    CHECK(padded == words[i].first);
  }
}

TEST_CASE("align pads at the most significant end") {
  std::vector<Numeral> in{{System::base(2), d({1})}, {System::base(2), d({1, 0, 1})}};
  auto a = align(in);
  CHECK(a.words[0] == d({0, 0, 1}));
  CHECK(a.words[1] == d({1, 0, 1}));
  std::vector<Numeral> zeros{{System::base(2), {}}, {System::base(2), {}}};
  auto z = align(zeros);
  CHECK(z.words[0].empty());
  CHECK(z.words[1].empty());
  std::vector<Numeral> mixed{{System::base(2), d({1, 0})}, {System::base(2, DigitOrder::lsd), d({1, 1, 0, 1})}};
  auto m = align(mixed);
  CHECK(m.words[0] == d({0, 0, 1, 0}));
  CHECK(m.words[1] == d({1, 1, 0, 1}));
  CHECK(m.original_order[1] == DigitOrder::lsd);
}

TEST_CASE("expand_pattern") {
  PatternNumeral p{System::base(2), {}, d({1, 0}), d({1})};
  auto n = expand_pattern(p, 2);
  CHECK(n.digits == d({1, 0, 1, 0, 1}));
  CHECK(from_digits(n) == 21);
  PatternNumeral le{System::base(13), {}, d({1, 1, 1}), {}};
  CHECK(from_digits(expand_pattern(le, 1)) == 183);
  PatternNumeral f{System::fibonacci(), {}, d({1, 0, 0, 1, 0, 0}), {}};
  CHECK(from_digits(expand_pattern(f, 1)) == 16);
  PatternNumeral bad{System::fibonacci(), {}, d({1, 1}), {}};
  CHECK_THROWS_AS(expand_pattern(bad, 1), Error);
  CHECK_NOTHROW(expand_pattern(bad, 1, true));
}

TEST_CASE("pattern values follow an affine recurrence in r") {
  const std::vector<PatternNumeral> patterns{
      {System::base(2), {}, d({1, 0}), d({1})},
      {System::base(3), d({2}), d({1, 1}), d({0, 2})},
      {System::base(13), {}, d({1, 1, 1}), {}},
  };
  for (const auto& p : patterns) {
    BigInt B = 1;
    for (std::size_t i = 0; i < p.block.size(); ++i) B *= p.system.radix();
    const BigInt v0 = from_digits(expand_pattern(p, 0));
    const BigInt v1 = from_digits(expand_pattern(p, 1));
    const BigInt C = v1 - B * v0;
    BigInt prev = v1;
    for (std::size_t r = 2; r <= 30; ++r) {
      const BigInt cur = from_digits(expand_pattern(p, r));
      CHECK(cur == B * prev + C);
      prev = cur;
    }
  }
}

TEST_CASE("text forms") {
  CHECK(format_numeral(to_digits(21, System::base(2))) == "msd_2:10101");
  CHECK(format_numeral(to_digits(13 * 13 + 12 * 13, System::base(13))) == "msd_13:1_12_0");
  CHECK(format_numeral(to_digits(6, System::base(2, DigitOrder::lsd))) == "lsd_2:011");
  CHECK(from_digits(parse_numeral("lsd_2:011")) == 6);
  CHECK(from_digits(parse_numeral("msd_13:1_12_0")) == 325);
  CHECK(from_digits(parse_numeral("fib:100100")) == 16);
  CHECK_THROWS_AS(parse_numeral("msd_1:0"), Error);
  CHECK_THROWS_AS(parse_numeral("msd_2:102"), Error);
  auto p = parse_pattern("0* (10)^r 1", System::base(2));
  CHECK(p.block == d({1, 0}));
  CHECK(p.suffix == d({1}));
  CHECK(p.prefix.empty());
  auto q = parse_pattern("(1_1_1)^r", System::base(13));
  CHECK(q.block == d({1, 1, 1}));
  CHECK(parse_pattern(format_pattern(p), System::base(2)).block == p.block);
  CHECK_THROWS_AS(parse_pattern("10", System::base(2)), Error);
}
