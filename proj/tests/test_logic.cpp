#include <doctest.h>

#include <random>

#include "syncsum/learn.hpp"
#include "syncsum/logic.hpp"

using namespace syncsum;
using namespace syncsum::logic;
using numeration::System;

namespace {

const System kBin = System::base(2);

const Predicate& learned(const std::string& name) {
  static std::map<std::string, Predicate> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto oracle = learn::MembershipOracle::for_sequence(name);
    auto result = learn::learn_sync(oracle);
    REQUIRE(result.outcome == learn::Outcome::proved);
    it = cache.emplace(name, *result.predicate).first;
  }
  return it->second;
}

bool holds(const Predicate& p, std::vector<unsigned long> values) {
  std::vector<BigInt> v(values.begin(), values.end());
  return p.accepts(v);
}

// Compares automaton verdicts with direct formula evaluation on a grid.
void check_replay(const Predicate& p, unsigned long limit, unsigned long bound) {
  const auto names = p.names();
  std::vector<unsigned long> v(names.size(), 0);
  while (true) {
    Assignment a;
    std::vector<BigInt> big;
    for (std::size_t i = 0; i < names.size(); ++i) {
      a[names[i]] = v[i];
      big.emplace_back(v[i]);
    }
    REQUIRE_MESSAGE(p.accepts(big) == evaluate(*p.formula(), a, bound), describe(*p.formula()));
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == limit) v[i++] = 0;
    if (i == v.size()) break;
  }
}

}  // namespace

TEST_CASE("lift and relations") {
  auto ones = lift(sequences::catalog("T"), 1);
  for (unsigned long n : {1, 2, 4, 7}) CHECK(holds(ones, {n}));
  CHECK_FALSE(holds(ones, {3}));
  sequences::Dfao zero{kBin, 0, {0, 0}, {0}};
  CHECK(lift(zero, 1).is_empty());
  auto less = from_rel(automata::rel_lt(kBin), {{"x", kBin}, {"y", kBin}});
  CHECK(holds(less, {3, 5}));
  CHECK_FALSE(holds(less, {5, 3}));
  CHECK_THROWS_AS(from_rel(automata::rel_lt(kBin), {{"x", kBin}}), Error);
  CHECK_THROWS_AS(from_rel(automata::rel_lt(kBin), {{"x", kBin}, {"x", kBin}}), Error);
}

TEST_CASE("connectives and quantifiers") {
  auto all = p_exists(eq("n", "s", kBin), "s");
  for (unsigned long n = 0; n < 50; ++n) CHECK(holds(all, {n}));
  auto both = p_and(lift("T", 1, "n"), lt("n", "m", kBin));
  CHECK(both.names() == std::vector<std::string>{"n", "m"});
  CHECK(holds(both, {1, 2}));
  CHECK_FALSE(holds(both, {3, 5}));
  auto everything = p_not(lift(sequences::Dfao{kBin, 0, {0, 0}, {0}}, 1));
  CHECK(holds(everything, {0}));
  CHECK(holds(everything, {12345}));
  CHECK_THROWS_AS(p_exists(all, "s"), Error);
  auto forall = p_forall(leq("n", "m", kBin), "m");  // only n = 0
  CHECK(holds(forall, {0}));
  CHECK_FALSE(holds(forall, {1}));
  CHECK_THROWS_AS(p_and(eq("n", "s", kBin), eq("n", "t", System::base(3))), Error);
}

TEST_CASE("Zeckendorf predicates stay canonical") {
  const auto fib = System::fibonacci();
  auto p = p_or(lift("ftm", 1, "n"), eq("n", "m", fib));
  automata::Alphabet ab({fib, fib});
  // (n, m) with m written non-canonically must be rejected even though lift(n) ignores m.
  automata::Word w{ab.encode(std::vector<std::uint8_t>{0, 1}), ab.encode(std::vector<std::uint8_t>{1, 1})};
  CHECK_FALSE(p.dfa().accepts(w));
  CHECK(holds(p, {1, 7}));
  check_replay(p, 40, 0);
}

TEST_CASE("De Morgan on shipped predicates") {
  auto a = lift("T", 1, "n");
  auto b = lt("n", "m", kBin);
  auto c = leq("m", "n", kBin);
  CHECK(equivalent(p_not(p_and(a, b)), p_or(p_not(a), p_not(b))));
  CHECK(equivalent(p_not(p_or(b, c)), p_and(p_not(b), p_not(c))));
  CHECK(equivalent(p_not(p_and(a, learned("T"))), p_or(p_not(a), p_not(learned("T")))));
}

TEST_CASE("rename and reorder keep the relation") {
  auto p = lt("x", "y", kBin);
  auto q = reorder(p, {"y", "x"});
  CHECK(holds(q, {5, 3}));
  CHECK(equivalent(p, q));
  auto r = rename(p, "x", "z");
  CHECK(r.names() == std::vector<std::string>{"z", "y"});
  CHECK_FALSE(equivalent(p, r));
  CHECK_THROWS_AS(rename(p, "x", "y"), Error);
}

TEST_CASE("formula replay matches automata") {
  check_replay(p_and(lift("T", 1, "n"), lt("n", "m", kBin)), 64, 0);
  check_replay(p_exists(p_and(add("x", "y", "z", kBin), lift("ttm", 1, "y")), "y"), 48, 96);
  check_replay(p_forall(p_or(leq("x", "y", kBin), lift("sb", 0, "y")), "y"), 40, 80);
  check_replay(learned("T"), 64, 0);
}

TEST_CASE("padding invariance of constructed predicates") {
  std::mt19937_64 rng(3);
  const std::vector<Predicate> ps{learned("T"), p_exists(add("x", "y", "z", kBin), "y"),
                                  p_not(p_exists(p_and(lt("n", "i", kBin), lift("T", 1, "i")), "i"))};
  for (const auto& p : ps) {
    for (int i = 0; i < 3000; ++i) {
      std::vector<BigInt> v;
      for (std::size_t t = 0; t < p.arity(); ++t) v.emplace_back(static_cast<unsigned long>(rng() % 100000));
      auto w = p.dfa().alphabet.encode_values(v);
      const bool verdict = p.dfa().accepts(w);
      for (int pad = 0; pad < 3; ++pad) {
        w.insert(w.begin(), automata::Alphabet::zero());
        REQUIRE(p.dfa().accepts(w) == verdict);
      }
    }
  }
}

TEST_CASE("verification queries") {
  auto at_most = leq("s", "n", kBin);
  auto r = verify_functional(reorder(at_most, {"n", "s"}));
  CHECK_FALSE(r.verdict);
  REQUIRE(r.counterexample);
  CHECK(*r.counterexample == std::vector<BigInt>{1, 0, 1});
  CHECK(verify_functional(eq("n", "s", kBin)).verdict);
  CHECK(verify_total(eq("n", "s", kBin)).verdict);

  auto empty = p_and(eq("n", "s", kBin), lt("n", "s", kBin));
  auto total = verify_total(empty);
  CHECK_FALSE(total.verdict);
  CHECK(*total.counterexample == std::vector<BigInt>{0});

  auto ind = verify_inductive(eq("n", "s", kBin), sequences::catalog("T"));
  CHECK_FALSE(ind.verdict);
  REQUIRE(ind.counterexample);
  CHECK(*ind.counterexample == std::vector<BigInt>{2, 2, 0});
  CHECK(sequences::oracle("T", 3) == 0);

  auto fib = System::fibonacci();
  CHECK_THROWS_WITH_AS(verify_inductive(eq("n", "s", fib), sequences::catalog("ftm")),
                       doctest::Contains("unsupported"), Error);
  CHECK_THROWS_AS(verify_functional(lift("T", 1)), Error);
}

TEST_CASE("learned sum predicates verify") {
  for (const auto& name : {"T", "CA", "sb", "ttm", "gbar"}) {
    const auto& p = learned(name);
    CHECK(verify_functional(p).verdict);
    CHECK(verify_total(p).verdict);
    CHECK(verify_inductive(p, sequences::catalog(name)).verdict);
  }
  CHECK(holds(learned("T"), {8, 5}));
  CHECK(learned("CA").tracks()[0].system == System::base(3));
  CHECK(learned("CA").tracks()[1].system == System::base(2));
}

TEST_CASE("sum and index predicates") {
  const auto t = sequences::catalog("T");
  auto index = index_from_sum(learned("T"), t);
  CHECK(holds(index, {0, 1}));
  CHECK(holds(index, {1, 2}));
  CHECK(holds(index, {2, 4}));
  CHECK(holds(index, {3, 7}));
  CHECK_FALSE(holds(index, {0, 2}));
  for (unsigned long i = 0; i < 1000; ++i) {
    unsigned long count = 0, k = 0;
    for (;; ++k) {
      if (sequences::oracle("T", k) == 1 && count++ == i) break;
    }
    REQUIRE(holds(index, {i, k}));
  }
  auto sum = sum_from_index(index, t);
  CHECK(holds(sum, {8, 5}));
  CHECK(equivalent(sum, learned("T")));
  CHECK(equivalent(index_from_sum(sum, t), index));

  // d(0) = 0 and nothing counted yet: sum 0.
  auto ttm = sequences::catalog("ttm");
  CHECK(sequences::oracle("ttm", 0) == 0);
  auto ttm_sum = sum_from_index(index_from_sum(learned("ttm"), ttm), ttm);
  CHECK(holds(ttm_sum, {0, 0}));
  CHECK(equivalent(ttm_sum, learned("ttm")));

  sequences::Dfao zero{kBin, 0, {0, 0}, {0}};
  auto zero_sum = eq("n", "s", kBin);  // wrong for the zero sequence, but functional and total
  CHECK(index_from_sum(zero_sum, zero).is_empty());
  CHECK_THROWS_AS(index_from_sum(leq("n", "s", kBin), t), Error);
}

TEST_CASE("replay of the sum-index constructions") {
  const auto t = sequences::catalog("T");
  auto index = index_from_sum(learned("T"), t);
  check_replay(index, 40, 80);
  check_replay(sum_from_index(index, t), 24, 48);
}

TEST_CASE("text round trip") {
  const auto& p = learned("CA");
  auto text = to_text(p);
  CHECK(text.rfind("# names: n s\ntracks: msd_3 msd_2\n", 0) == 0);
  auto q = parse_predicate(text);
  CHECK(q.names() == p.names());
  CHECK(equivalent(p, q));
  auto r = parse_predicate(automata::to_string(p.dfa()));
  CHECK(r.names() == std::vector<std::string>{"n", "s"});
}
