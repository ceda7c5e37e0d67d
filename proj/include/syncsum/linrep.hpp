#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syncsum/matrix.hpp"
#include "syncsum/numeration.hpp"
#include "syncsum/sequences.hpp"

namespace syncsum::linrep {

/// f(n) = v * M[d_1] * ... * M[d_L] * w over the msd digits of n.
/// A representation may carry only some digit matrices; evaluating a word
/// that uses a missing digit is an error.
class LinRep {
 public:
  LinRep(numeration::System system, Vector v, std::map<unsigned, Matrix> mats, Vector w);

  numeration::System system() const noexcept { return system_; }
  const Vector& v() const noexcept { return v_; }
  const Vector& w() const noexcept { return w_; }
  const std::map<unsigned, Matrix>& mats() const noexcept { return mats_; }
  const Matrix& matrix(unsigned digit) const;
  std::size_t dimension() const noexcept { return v_.size(); }
  bool is_complete() const;

  /// Exact value on an arbitrary (possibly padded) msd digit word.
  BigRat eval_word(std::span<const std::uint8_t> digits) const;

 private:
  numeration::System system_;
  Vector v_;
  std::map<unsigned, Matrix> mats_;
  Vector w_;
  // Machine-integer mirror used while no entry overflows.
  bool integral_ = false;
  std::vector<std::int64_t> iv_, iw_;
  std::vector<std::vector<std::int64_t>> imats_;
};

BigInt eval_linrep(const LinRep& lr, const BigInt& n);

/// Counts #{ j <= n : d(j) = target } by path counting on the projected
/// two-track automaton for "j <= n and d(j) = target".
LinRep derive_sum_linrep(const sequences::Dfao& d, int target);
/// Running sum  sum_{j <= n} d(j)  as one representation.
LinRep derive_running_sum_linrep(const sequences::Dfao& d);

/// c1 * f1 + c2 * f2; shares the skeleton when v and the matrices coincide.
LinRep combine(const LinRep& a, const LinRep& b, const BigRat& c1, const BigRat& c2);
/// n -> n in the given system.
LinRep value_linrep(numeration::System system);
LinRep constant_linrep(numeration::System system, const BigRat& c);

/// Pattern family prefix.block^r.suffix folded to  left * block^r * right.
struct PatternForm {
  Vector left;
  Matrix block;
  Vector right;
};

/// Builds the folded form and checks it against eval_linrep for r <= 12.
PatternForm pattern_matrix(const LinRep& lr, const numeration::PatternNumeral& p);
BigRat pattern_value(const PatternForm& form, std::size_t r);
BigInt pattern_values(const LinRep& lr, const numeration::PatternNumeral& p, std::size_t r);

std::string to_json(const LinRep& lr);
LinRep from_json(std::string_view text);

/// Reference representations shipped under data/fixtures:
/// tmsum, pd, mw, pf, le1, le2, bs, sc, rs, ftm.
LinRep reference_linrep(std::string_view name);
std::vector<std::string> reference_linrep_names();

}  // namespace syncsum::linrep
