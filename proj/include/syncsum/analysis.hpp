#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "syncsum/linrep.hpp"

namespace syncsum::analysis {

using linrep::Matrix;

/// Polynomial over the rationals, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRat> coefficients);
  static Polynomial from_integers(std::initializer_list<long> lowest_first);
  /// (x - root)^multiplicity
  static Polynomial linear_power(const BigRat& root, unsigned multiplicity = 1);
  static Polynomial x();

  const std::vector<BigRat>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const BigRat& leading() const;
  BigRat coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : BigRat(0); }
  Polynomial monic() const;
  Polynomial derivative() const;
  BigRat operator()(const BigRat& x) const;
  Matrix operator()(const Matrix& m) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// "x^4 - 6x^3 + 9x^2 - 4x"
  std::string to_string(const std::string& variable = "x") const;

 private:
  void trim();
  std::vector<BigRat> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor (zero when both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);
bool poly_divides(const Polynomial& d, const Polynomial& p);

/// Least-degree monic p with p(M) = 0, from the first linear dependence among I, M, M^2, ...
Polynomial minimal_polynomial(const Matrix& m);
/// The part of gcd(p, p') not divisible by x, when it has degree >= 1.
std::optional<Polynomial> repeated_nonzero_root(const Polynomial& p);
/// sum_i p_i g(r + i) = 0 for 0 <= r <= R.
bool verify_recurrence(const std::function<BigInt(std::size_t)>& g, const Polynomial& p, std::size_t R);

/// sum over terms of poly(r) * base^r.
struct ClosedForm {
  struct Term {
    Polynomial poly;  // in r
    BigRat base;
  };
  std::vector<Term> terms;
  BigRat operator()(std::size_t r) const;
  std::string to_string() const;
};

/// a + b r + c base^r
ClosedForm affine_plus_geometric(const BigRat& a, const BigRat& b, const BigRat& c, const BigRat& base);

struct ClosedFormCheck {
  bool verified = false;
  bool precondition_failed = false;
  std::string failure;
  std::size_t degree = 0;                                // D, after removing a factor x^from
  std::size_t from = 0;                                  // identity certified for r >= from
  std::vector<std::pair<std::size_t, BigInt>> checked;  // r and g(r) agreeing with the form
  std::vector<std::string> transcript;
};

/// Proof that g(r) = cf(r) for all r >= m, where p = x^m q, q(0) != 0 and p
/// annihilates g: every base of cf is a root of q of sufficient multiplicity,
/// g satisfies p for r <= R (skipped when `annihilation_proved`), and g, cf
/// agree for r = m..m+deg(q).
ClosedFormCheck verify_closed_form(const std::function<BigInt(std::size_t)>& g, const ClosedForm& cf,
                                   const Polynomial& p, std::size_t R = 40, bool annihilation_proved = false);
/// Pattern-family version: g(r) = left * block^r * right, and the recurrence
/// is proved by checking p(block) = 0 exactly.
ClosedFormCheck verify_closed_form(const linrep::PatternForm& form, const ClosedForm& cf, const Polynomial& p);

/// g(r) = h(r) for all r when g comes from a pattern form and h is annihilated by q:
/// lcm(minimal polynomial of the block, q) annihilates g - h, so D initial agreements suffice.
ClosedFormCheck verify_pattern_identity(const linrep::PatternForm& form, const std::function<BigInt(std::size_t)>& h,
                                        const Polynomial& q, const std::string& description);

// ---- Fibonacci identities ----------------------------------------------------

struct FibTerm {
  long coefficient;
  unsigned shift;
};
/// sum_j c_j F_{step r + shift_j} = 0 for 0 <= r <= R.
bool fib_identity(const std::vector<FibTerm>& terms, unsigned step, std::size_t R);
/// sum_j c_j x^{shift_j}: x^2 - x - 1 divides it exactly when the identity holds for every index.
Polynomial shift_polynomial(const std::vector<FibTerm>& terms);

// ---- integer formulas ----------------------------------------------------------

struct FormulaCheck {
  std::string name;
  bool verified = false;
  std::vector<std::string> transcript;
};

/// rs_pow2, bs_pow2, le_pattern, ftm_pattern.
FormulaCheck verify_integer_formula(const std::string& name);
std::vector<std::string> integer_formula_names();

/// sum_rs(2^k - 1) by the two-case power formula.
BigInt rs_pow2_formula(unsigned k);
/// sum_bs(2^k) = (1 + (-1)^k + L_k + 3 F_k) / 2.
BigInt bs_pow2_formula(unsigned k);
/// a(r), b(r) of the Fibonacci-Thue-Morse pattern (100100)^r.
BigInt ftm_a(unsigned r);
BigInt ftm_b(unsigned r);

// ---- certificates ----------------------------------------------------------------

struct Certificate {
  std::string sequence;
  std::string method;  // affine-residual, integer-formula, learner-divergence-report
  std::string pattern;
  BigRat alpha = 0, delta = 0, beta = 1;
  BigRat A = 0, B = 0;  // |alpha n(r) + delta - f(n(r))| = A + B r
  Polynomial annihilator;
  std::size_t degree = 0;
  std::size_t from = 0;  // residual affine for r >= from
  std::vector<std::pair<std::size_t, BigInt>> checked;  // r and f(n(r))
  std::vector<std::string> transcript;
  std::string narrative;
  bool valid = false;
};

/// Affine-residual certificate. Throws Error when the residual is not affine in r
/// or has slope zero.
Certificate nonsync_certificate(const std::string& sequence, const linrep::LinRep& f,
                                const numeration::PatternNumeral& pattern, const BigRat& alpha, const BigRat& delta,
                                const BigRat& beta);
/// Same, using the representation derived from the catalog automaton.
Certificate nonsync_certificate(const std::string& sequence, const numeration::PatternNumeral& pattern,
                                const BigRat& alpha, const BigRat& delta, const BigRat& beta);
/// Integer-formula check plus learner non-convergence, for rs and bs.
Certificate divergence_certificate(const std::string& sequence, std::size_t max_states = 64, std::uint64_t seed = 0);
/// Re-checks an affine certificate from its own data.
bool recheck(const Certificate& c, const linrep::LinRep& f);

std::string to_json(const Certificate& c);

// ---- growth ----------------------------------------------------------------------

struct GrowthScan {
  std::string sequence;
  double beta = 1;
  std::vector<std::pair<std::uint64_t, double>> maxima;  // N, max_{1<=n<=N} f(n)/n^beta
  double drift = 0;                                      // relative change from first to last N
};

/// N runs over 2^min_exp .. 2^max_exp.
GrowthScan growth_scan(const std::string& sequence, double beta, unsigned min_exp = 10, unsigned max_exp = 20);

}  // namespace syncsum::analysis
