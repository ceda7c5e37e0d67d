#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "syncsum/analysis.hpp"

using namespace syncsum;
using namespace syncsum::analysis;
using numeration::System;

namespace {

Matrix fixture(const char* name, unsigned digit) { return linrep::reference_linrep(name).matrix(digit); }

Polynomial ints(std::initializer_list<long> lowest_first) { return Polynomial::from_integers(lowest_first); }

// Plain recursive Fibonacci numbers, independent of the library.
BigInt fib(unsigned n) {
  BigInt a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    BigInt t = a + b;
    a = b;
    b = t;
  }
  return a;
}

BigInt pow_int(long base, unsigned e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic and printing") {
  const auto p = ints({0, -4, 9, -6, 1});
  CHECK(p.to_string() == "x^4 - 6x^3 + 9x^2 - 4x");
  CHECK(p.degree() == 4);
  CHECK(Polynomial().to_string() == "0");
  const auto factored = Polynomial::x() * Polynomial::linear_power(4) * Polynomial::linear_power(1, 2);
  CHECK(factored == p);
  const auto dm = divmod(p, Polynomial::linear_power(1, 2));
  CHECK(dm.remainder.is_zero());
  CHECK(dm.quotient == ints({0, -4, 1}));
  CHECK(gcd(p, p.derivative()) == Polynomial::linear_power(1));
  CHECK(lcm(ints({-1, 1}), ints({1, 1})) == ints({-1, 0, 1}));
  CHECK(Polynomial({BigRat(1, 2), 1}).to_string() == "x + 1/2");
}

TEST_CASE("minimal polynomials of transcribed fixtures") {
  CHECK(minimal_polynomial(fixture("pd", 1) * fixture("pd", 0)).to_string() == "x^4 - 6x^3 + 9x^2 - 4x");
  CHECK(minimal_polynomial(fixture("mw", 1) * fixture("mw", 1)).to_string() == "x^3 - 11x^2 + 19x - 9");
  CHECK(minimal_polynomial(fixture("pf", 1) * fixture("pf", 0)).to_string() == "x^4 - 6x^3 + 9x^2 - 4x");
  CHECK(minimal_polynomial(fixture("sc", 1)).to_string() == "x^3 - 5x^2 + 7x - 3");
  CHECK(minimal_polynomial(fixture("rs", 1)).to_string() == "x^6 - 2x^5 - 3x^4 + 6x^3 + 2x^2 - 4x");
  CHECK(minimal_polynomial(fixture("le1", 1)).to_string() == "x^6 - 12x^5 - 12x^4 - 14x^3 + 12x^2 + 12x + 13");
  CHECK(minimal_polynomial(Matrix::identity(3)).to_string() == "x - 1");
  CHECK(minimal_polynomial(Matrix(2, 2)).to_string() == "x");
}

TEST_CASE("minimal polynomial is least: removing a root no longer annihilates") {
  for (const auto& m : {fixture("pd", 1) * fixture("pd", 0), fixture("mw", 1) * fixture("mw", 1), fixture("sc", 1)}) {
    const auto p = minimal_polynomial(m);
    CHECK(p(m).is_zero());
    for (const BigRat root : {BigRat(0), BigRat(1), BigRat(3), BigRat(4), BigRat(9)}) {
      const auto lin = Polynomial::linear_power(root);
      if (!poly_divides(lin, p)) continue;
      CHECK_FALSE(divmod(p, lin).quotient(m).is_zero());
    }
  }
}

TEST_CASE("bs digit-0 matrix is annihilated by (x^2 - x - 1)(x^2 - 1)") {
  const auto q = ints({-1, -1, 1}) * ints({-1, 0, 1});
  CHECK(q.to_string() == "x^4 - x^3 - 2x^2 + x + 1");
  CHECK(q(fixture("bs", 0)).is_zero());
  CHECK(poly_divides(minimal_polynomial(fixture("bs", 0)), q));
}

TEST_CASE("repeated non-zero roots") {
  const auto w = repeated_nonzero_root(ints({0, -4, 9, -6, 1}));
  REQUIRE(w);
  CHECK(poly_divides(Polynomial::linear_power(1), *w));
  CHECK_FALSE(repeated_nonzero_root(ints({-2, 0, 1})));
  CHECK_FALSE(repeated_nonzero_root(ints({0, 0, 1})));  // only x^2
  const auto mw = repeated_nonzero_root(minimal_polynomial(fixture("mw", 1) * fixture("mw", 1)));
  REQUIRE(mw);
  CHECK(*mw == Polynomial::linear_power(1));
}

TEST_CASE("recurrence checks") {
  CHECK(verify_recurrence([](std::size_t r) { return fib(static_cast<unsigned>(r)); }, ints({-1, -1, 1}), 200));
  CHECK_FALSE(verify_recurrence([](std::size_t r) { return BigInt(r * r); }, Polynomial::linear_power(1, 2), 20));
  CHECK(verify_recurrence([](std::size_t r) { return BigInt(r * r); }, Polynomial::linear_power(1, 3), 20));
  const auto pd = linrep::reference_linrep("pd");
  const auto pat = numeration::parse_pattern("(10)^r 1", System::base(2));
  CHECK(verify_recurrence([&](std::size_t r) { return linrep::pattern_values(pd, pat, r); },
                          ints({0, -4, 9, -6, 1}), 30));
}

TEST_CASE("closed forms along pattern families") {
  struct Case {
    const char* fixture;
    const char* pattern;
    unsigned base;
    BigRat a, b, c, lambda;
    std::size_t from;
  };
  const Case cases[] = {
      {"pd", "(10)^r 1", 2, BigRat(1, 9), BigRat(1, 3), BigRat(8, 9), 4, 1},
      {"mw", "(11)^r", 3, BigRat(-1, 4), -1, BigRat(1, 4), 9, 0},
      {"pf", "(10)^r 1", 2, BigRat(1, 3), -1, BigRat(2, 3), 4, 1},
      {"sc", "(1)^r", 3, BigRat(-1, 4), BigRat(-1, 2), BigRat(1, 4), 3, 0},
  };
  for (const auto& c : cases) {
    CAPTURE(c.fixture);
    const auto lr = linrep::reference_linrep(c.fixture);
    const auto pat = numeration::parse_pattern(c.pattern, System::base(c.base));
    const auto form = linrep::pattern_matrix(lr, pat);
    const auto p = minimal_polynomial(form.block);
    const auto cf = affine_plus_geometric(c.a, c.b, c.c, c.lambda);
    const auto check = verify_closed_form(form, cf, p);
    CHECK(check.verified);
    CHECK(check.from == c.from);
    // Brute-force running sums for the first few members.
    for (std::size_t r = c.from; r <= 5; ++r) {
      const BigInt n = numeration::from_digits(numeration::expand_pattern(pat, r));
      CHECK(BigRat(sequences::running_sum_oracle(c.fixture, n.get_ui())) == cf(r));
    }
  }
}

TEST_CASE("paper-folding lemma fails only at r = 0") {
  // sum_pf(1) = pf(0) + pf(1) = 0 while (1 + 1)/2 - 0 = 1.
  CHECK(sequences::running_sum_oracle("pf", 1) == 0);
  const auto cf = affine_plus_geometric(BigRat(1, 3), -1, BigRat(2, 3), 4);
  CHECK(cf(0) == 1);
  const auto lr = linrep::reference_linrep("pf");
  CHECK(linrep::pattern_values(lr, numeration::parse_pattern("(10)^r 1", System::base(2)), 0) == 0);
}

TEST_CASE("closed-form preconditions are reported separately") {
  const auto form = linrep::pattern_matrix(linrep::reference_linrep("sc"),
                                           numeration::parse_pattern("(1)^r", System::base(3)));
  const auto p = minimal_polynomial(form.block);
  const auto wrong_base = affine_plus_geometric(BigRat(-1, 4), BigRat(-1, 2), BigRat(1, 4), 5);
  const auto bad = verify_closed_form(form, wrong_base, p);
  CHECK(bad.precondition_failed);
  CHECK_FALSE(bad.verified);
  const auto wrong_value = affine_plus_geometric(BigRat(-1, 4), BigRat(-1, 2), BigRat(1, 2), 3);
  const auto mismatch = verify_closed_form(form, wrong_value, p);
  CHECK_FALSE(mismatch.precondition_failed);
  CHECK_FALSE(mismatch.verified);
  // r^2 is not a solution of (x - 1)^2.
  ClosedForm sq{{{ints({0, 0, 1}), 1}}};
  const auto r2 = verify_closed_form([](std::size_t r) { return BigInt(r * r); }, sq, Polynomial::linear_power(1, 2));
  CHECK(r2.precondition_failed);
}

TEST_CASE("Fibonacci identities") {
  const std::vector<FibTerm> first{{1, 14}, {-18, 8}, {1, 2}};
  const std::vector<FibTerm> second{{1, 14}, {-6, 8}, {-16, 7}, {-16, 4}, {5, 2}};
  CHECK(fib_identity(first, 6, 200));
  CHECK(fib_identity(second, 6, 200));
  CHECK_FALSE(fib_identity({{1, 14}, {-17, 8}, {1, 2}}, 6, 10));
  const auto golden = ints({-1, -1, 1});
  CHECK(shift_polynomial(first).to_string() == "x^14 - 18x^8 + x^2");
  CHECK(poly_divides(golden, ints({1, 0, 0, 0, 0, 0, -18, 0, 0, 0, 0, 0, 1})));
  CHECK(poly_divides(golden, shift_polynomial(first)));
  CHECK(poly_divides(golden, shift_polynomial(second)));
  // Independent spot check of identity (i) with r = 3.
  CHECK(fib(32) - 18 * fib(26) + fib(20) == 0);
}

TEST_CASE("integer formulas") {
  for (const auto& name : integer_formula_names()) {
    CAPTURE(name);
    CHECK(verify_integer_formula(name).verified);
  }
  CHECK_THROWS_AS(verify_integer_formula("nope"), Error);
  // Independent brute-force values.
  CHECK(rs_pow2_formula(4) == 6);
  for (unsigned k = 2; k <= 14; ++k) {
    CHECK(rs_pow2_formula(k) == sequences::running_sum_oracle("rs", (1u << k) - 1));
  }
  for (unsigned k = 0; k <= 16; ++k) {
    CHECK(bs_pow2_formula(k) == sequences::running_sum_oracle("bs", 1u << k));
  }
  CHECK(bs_pow2_formula(2) == 4);
  CHECK(ftm_a(1) == 5);
  CHECK(ftm_b(1) == 2);
  CHECK(sequences::running_sum_oracle("ftm", 16) == 7);
}

TEST_CASE("bs closed form agrees with the golden-ratio expression") {
  const double phi = (1 + std::sqrt(5.0)) / 2, psi = (1 - std::sqrt(5.0)) / 2;
  for (unsigned k = 0; k <= 30; ++k) {
    const double lucas = std::pow(phi, k) + std::pow(psi, k);
    const double fibk = (std::pow(phi, k) - std::pow(psi, k)) / std::sqrt(5.0);
    const double expected = (1 + (k % 2 ? -1 : 1) + lucas + 3 * fibk) / 2;
    CHECK(std::llround(expected) == bs_pow2_formula(k).get_si());
  }
}

TEST_CASE("Leech values along (1_1_1)^r") {
  const auto lr = linrep::combine(linrep::reference_linrep("le1"), linrep::reference_linrep("le2"), 1, 2);
  const long expected[] = {0, 1, 16, 186, 2377, 30943, 402240};
  BigInt n = 0;
  for (int m = 0; m <= 6; ++m) {
    CHECK(linrep::eval_linrep(lr, n) == expected[m]);
    n = 13 * n + 1;
  }
  for (unsigned r = 0; r <= 3; ++r) {
    const BigInt target = (pow_int(13, 3 * r) - 1) / 12;
    CHECK(linrep::eval_linrep(lr, target) == target + 3 * r);
  }
}

TEST_CASE("non-synchronisation certificates") {
  struct Case {
    const char* seq;
    const char* pattern;
    System sys;
    BigRat alpha, delta, B;
  };
  const Case cases[] = {
      {"pd", "(10)^r 1", System::base(2), BigRat(2, 3), 0, BigRat(1, 3)},
      {"mw", "(11)^r", System::base(3), BigRat(1, 2), 0, 1},
      {"pf", "(10)^r 1", System::base(2), BigRat(1, 2), BigRat(1, 2), 1},
      {"le", "(1_1_1)^r", System::base(13), 1, 0, 3},
      {"sc", "(1)^r", System::base(3), BigRat(1, 2), 0, BigRat(1, 2)},
      {"ftm", "(100100)^r", System::fibonacci(), BigRat(1, 2), 0, 1},
  };
  for (const auto& c : cases) {
    CAPTURE(c.seq);
    const auto pat = numeration::parse_pattern(c.pattern, c.sys);
    const auto cert = nonsync_certificate(c.seq, pat, c.alpha, c.delta, 1);
    CHECK(cert.valid);
    CHECK(cert.B == c.B);
    CHECK(cert.method == "affine-residual");
    CHECK(cert.narrative.find("synchronised") != std::string::npos);
    // Independent residual from brute-force sums.
    for (std::size_t r = std::max<std::size_t>(cert.from, 0); r <= 3; ++r) {
      const BigInt n = numeration::from_digits(numeration::expand_pattern(pat, r));
      if (n > 2000000) break;
      const BigRat f = sequences::running_sum_oracle(c.seq, n.get_ui());
      const BigRat g = abs(c.alpha * n + c.delta - f);
      CHECK(g == cert.A + cert.B * static_cast<long>(r));
    }
    const auto j = nlohmann::json::parse(to_json(cert));
    CHECK(j["method"] == "affine-residual");
    CHECK(j["sequence"] == c.seq);
  }
}

TEST_CASE("certificates are refused for a wrong slope") {
  const auto pat = numeration::parse_pattern("(11)^r", System::base(3));
  CHECK_THROWS_AS(nonsync_certificate("mw", pat, BigRat(1, 3), 0, 1), Error);
}

TEST_CASE("certificates recheck from their own data") {
  const auto pat = numeration::parse_pattern("(10)^r 1", System::base(2));
  auto cert = nonsync_certificate("pd", linrep::reference_linrep("pd"), pat, BigRat(2, 3), 0, 1);
  CHECK(recheck(cert, linrep::reference_linrep("pd")));
  cert.B += 1;
  CHECK_FALSE(recheck(cert, linrep::reference_linrep("pd")));
}

TEST_CASE("growth scans stay bounded for synchronised sums") {
  const auto t = growth_scan("T", 1.0, 10, 16);
  CHECK(t.drift < 0.05);
  for (const auto& [N, m] : t.maxima) CHECK(m <= 1.0);
  const auto ca = growth_scan("CA", std::log(2.0) / std::log(3.0), 10, 16);
  CHECK(ca.drift < 0.05);
  CHECK(ca.maxima.size() == 7);
}
