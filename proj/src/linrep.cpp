#include "syncsum/linrep.hpp"

#include <json.hpp>

#include "syncsum/automata.hpp"
#include "syncsum/embedded.hpp"

namespace syncsum::linrep {

using automata::Alphabet;
using automata::State;
using automata::Symbol;
using numeration::System;

namespace {

bool fits_machine_int(const BigRat& x) {
  return x.get_den() == 1 && mpz_sizeinbase(x.get_num_mpz_t(), 2) < 62;
}

std::int64_t to_int64(const BigRat& x) { return static_cast<std::int64_t>(x.get_num().get_si()); }

}  // namespace

LinRep::LinRep(System system, Vector v, std::map<unsigned, Matrix> mats, Vector w)
    : system_(system), v_(std::move(v)), mats_(std::move(mats)), w_(std::move(w)) {
  if (system_.order() != numeration::DigitOrder::msd) throw Error("linear representations read msd first");
  const std::size_t n = v_.size();
  if (n == 0 || w_.size() != n) throw Error("v and w must have the same non-zero dimension");
  if (mats_.empty()) throw Error("a linear representation needs at least one digit matrix");
  for (const auto& [digit, m] : mats_) {
    if (digit >= system_.radix()) throw Error("matrix for digit " + std::to_string(digit) + " outside the alphabet");
    if (m.rows() != n || m.cols() != n) throw Error("digit matrix dimension does not match v");
  }
  integral_ = true;
  for (const auto& x : v_) integral_ = integral_ && fits_machine_int(x);
  for (const auto& x : w_) integral_ = integral_ && fits_machine_int(x);
  for (const auto& [digit, m] : mats_) {
    for (const auto& x : m.data()) integral_ = integral_ && fits_machine_int(x);
  }
  if (integral_) {
    for (const auto& x : v_) iv_.push_back(to_int64(x));
    for (const auto& x : w_) iw_.push_back(to_int64(x));
    imats_.resize(system_.radix());
    for (const auto& [digit, m] : mats_) {
      for (const auto& x : m.data()) imats_[digit].push_back(to_int64(x));
    }
  }
}

const Matrix& LinRep::matrix(unsigned digit) const {
  auto it = mats_.find(digit);
  if (it == mats_.end()) throw Error("representation has no matrix for digit " + std::to_string(digit));
  return it->second;
}

bool LinRep::is_complete() const { return mats_.size() == system_.radix(); }

BigRat LinRep::eval_word(std::span<const std::uint8_t> digits) const {
  for (auto d : digits) matrix(d);  // presence check
  if (integral_) {
    const std::size_t n = dimension();
    std::vector<std::int64_t> row = iv_, next(n);
    bool overflow = false;
    for (std::size_t pos = 0; pos < digits.size() && !overflow; ++pos) {
      const auto& m = imats_[digits[pos]];
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t i = 0; i < n && !overflow; ++i) {
        if (row[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          std::int64_t prod;
          if (__builtin_mul_overflow(row[i], m[i * n + j], &prod) || __builtin_add_overflow(next[j], prod, &next[j])) {
            overflow = true;
            break;
          }
        }
      }
      row.swap(next);
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n && !overflow; ++i) {
      std::int64_t prod;
      if (__builtin_mul_overflow(row[i], iw_[i], &prod) || __builtin_add_overflow(total, prod, &total)) {
        overflow = true;
      }
    }
    if (!overflow) return BigRat(static_cast<long>(total));
  }
  Vector row = v_;
  for (auto d : digits) row = row * matrix(d);
  return dot(row, w_);
}

BigInt eval_linrep(const LinRep& lr, const BigInt& n) {
  const auto word = numeration::to_digits(n, lr.system()).digits;
  BigRat value = lr.eval_word(word);
  if (value.get_den() != 1) throw Error("internal: representation produced a non-integer value");
  return value.get_num();
}

namespace {

// Two-track automaton over (n, j) with label d(j) on states where j <= n holds,
// -1 elsewhere; minimized as a Moore machine so every target shares it.
struct Skeleton {
  automata::Dfa dfa;
  std::vector<long> labels;
};

Skeleton build_skeleton(const sequences::Dfao& input) {
  const sequences::Dfao d = sequences::msd_form(input);
  const System sys = d.system;
  const Alphabet two({sys, sys});  // (n, j)
  const std::size_t map[] = {1, 0};
  const automata::Dfa leq = automata::cylindrify(automata::rel_leq(sys), two, map);
  const Symbol k = two.size();
  automata::Dfa raw;
  raw.alphabet = two;
  std::vector<long> labels;
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State c, State q) {
    auto [it, fresh] = ids.try_emplace({c, q}, static_cast<State>(pairs.size()));
    if (fresh) pairs.emplace_back(c, q);
    return it->second;
  };
  intern(leq.initial, d.initial);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [c, q] = pairs[i];
    const long label = leq.accepting[c] ? d.output[q] : -1;
    labels.push_back(label);
    raw.accepting.push_back(label >= 0);
    for (Symbol s = 0; s < k; ++s) raw.delta.push_back(intern(leq.next(c, s), d.next(q, two.digit(s, 1))));
  }
  raw.initial = 0;
  Skeleton out;
  out.dfa = automata::minimize_labeled(raw, labels, out.labels);
  return out;
}

LinRep linrep_from_skeleton(const Skeleton& sk, const std::vector<BigRat>& weight_of_label_plus_one) {
  const auto& dfa = sk.dfa;
  const auto& two = dfa.alphabet;
  const System sys = two.tracks()[0];
  const State n = dfa.num_states();
  // Live states reach some labelled (j <= n) state.
  std::vector<std::vector<State>> back(n);
  for (State q = 0; q < n; ++q) {
    for (Symbol s = 0; s < two.size(); ++s) back[dfa.next(q, s)].push_back(q);
  }
  std::vector<bool> live(n, false);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q) {
    if (sk.labels[q] >= 0) stack.push_back(q);
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    if (live[q]) continue;
    live[q] = true;
    for (State p : back[q]) stack.push_back(p);
  }
  std::vector<std::size_t> index(n, SIZE_MAX);
  std::size_t dim = 0;
  for (State q = 0; q < n; ++q) {
    if (live[q]) index[q] = dim++;
  }
  std::map<unsigned, Matrix> mats;
  if (dim == 0 || !live[dfa.initial]) {
    for (unsigned d = 0; d < sys.radix(); ++d) mats.emplace(d, Matrix(1, 1));
    return LinRep(sys, {BigRat(1)}, std::move(mats), {BigRat(0)});
  }
  for (unsigned d = 0; d < sys.radix(); ++d) mats.emplace(d, Matrix(dim, dim));
  for (State q = 0; q < n; ++q) {
    if (!live[q]) continue;
    for (Symbol s = 0; s < two.size(); ++s) {
      const State t = dfa.next(q, s);
      if (live[t]) mats.at(two.digit(s, 0))(index[q], index[t]) += 1;
    }
  }
  Vector v(dim), w(dim);
  v[index[dfa.initial]] = 1;
  for (State q = 0; q < n; ++q) {
    if (live[q]) w[index[q]] = weight_of_label_plus_one.at(static_cast<std::size_t>(sk.labels[q] + 1));
  }
  return LinRep(sys, std::move(v), std::move(mats), std::move(w));
}

}  // namespace

LinRep derive_sum_linrep(const sequences::Dfao& d, int target) {
  const Skeleton sk = build_skeleton(d);
  long max_label = 0;
  for (long l : sk.labels) max_label = std::max(max_label, l);
  std::vector<BigRat> weights(static_cast<std::size_t>(max_label + 2));
  if (target >= 0 && target <= max_label) weights[static_cast<std::size_t>(target + 1)] = 1;
  return linrep_from_skeleton(sk, weights);
}

LinRep derive_running_sum_linrep(const sequences::Dfao& d) {
  const Skeleton sk = build_skeleton(d);
  long max_label = 0;
  for (long l : sk.labels) max_label = std::max(max_label, l);
  if (*std::min_element(d.output.begin(), d.output.end()) < 0) throw Error("running sums need non-negative outputs");
  std::vector<BigRat> weights(static_cast<std::size_t>(max_label + 2));
  for (long l = 0; l <= max_label; ++l) weights[static_cast<std::size_t>(l + 1)] = l;
  return linrep_from_skeleton(sk, weights);
}

LinRep combine(const LinRep& a, const LinRep& b, const BigRat& c1, const BigRat& c2) {
  if (!(a.system() == b.system())) throw Error("cannot combine representations over different systems");
  std::vector<unsigned> digits_a, digits_b;
  for (const auto& [d, m] : a.mats()) digits_a.push_back(d);
  for (const auto& [d, m] : b.mats()) digits_b.push_back(d);
  if (digits_a != digits_b) throw Error("cannot combine representations with different digit matrices");
  if (a.v() == b.v() && a.mats() == b.mats()) {
    Vector w(a.dimension());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = c1 * a.w()[i] + c2 * b.w()[i];
    return LinRep(a.system(), a.v(), a.mats(), std::move(w));
  }
  Vector v = a.v(), w;
  v.insert(v.end(), b.v().begin(), b.v().end());
  for (const auto& x : a.w()) w.push_back(c1 * x);
  for (const auto& x : b.w()) w.push_back(c2 * x);
  std::map<unsigned, Matrix> mats;
  for (const auto& [d, m] : a.mats()) mats.emplace(d, direct_sum(m, b.matrix(d)));
  return LinRep(a.system(), std::move(v), std::move(mats), std::move(w));
}

LinRep value_linrep(System system) {
  system = system.as_msd();
  std::map<unsigned, Matrix> mats;
  if (system.is_fibonacci()) {
    // state (value, value with weights shifted down one index, 1)
    for (unsigned d = 0; d < 2; ++d) {
      mats.emplace(d, Matrix::from_rows({{1, 1, 0}, {1, 0, 0}, {d, d, 1}}));
    }
    return LinRep(system, {0, 0, 1}, std::move(mats), {1, 0, 0});
  }
  const unsigned k = system.radix();
  for (unsigned d = 0; d < k; ++d) mats.emplace(d, Matrix::from_rows({{k, 0}, {d, 1}}));
  return LinRep(system, {0, 1}, std::move(mats), {1, 0});
}

LinRep constant_linrep(System system, const BigRat& c) {
  system = system.as_msd();
  std::map<unsigned, Matrix> mats;
  for (unsigned d = 0; d < system.radix(); ++d) mats.emplace(d, Matrix::identity(1));
  return LinRep(system, {1}, std::move(mats), {c});
}

PatternForm pattern_matrix(const LinRep& lr, const numeration::PatternNumeral& p) {
  if (!(p.system.as_msd() == lr.system())) throw Error("pattern system differs from the representation's");
  const std::size_t n = lr.dimension();
  PatternForm form{lr.v(), Matrix::identity(n), lr.w()};
  for (auto d : p.prefix) form.left = form.left * lr.matrix(d);
  for (auto d : p.block) form.block = form.block * lr.matrix(d);
  Matrix suffix = Matrix::identity(n);
  for (auto d : p.suffix) suffix = suffix * lr.matrix(d);
  form.right = suffix * lr.w();
  for (std::size_t r = 0; r <= 12; ++r) {
    const auto numeral = numeration::expand_pattern(p, r);
    const BigInt direct = eval_linrep(lr, numeration::from_digits(numeral));
    if (pattern_value(form, r) != direct) {
      throw Error("pattern form disagrees with direct evaluation at r=" + std::to_string(r) +
                  " (representation not padding-invariant?)");
    }
  }
  return form;
}

BigRat pattern_value(const PatternForm& form, std::size_t r) {
  Vector row = form.left;
  for (std::size_t i = 0; i < r; ++i) row = row * form.block;
  return dot(row, form.right);
}

BigInt pattern_values(const LinRep& lr, const numeration::PatternNumeral& p, std::size_t r) {
  const BigRat value = pattern_value(pattern_matrix(lr, p), r);
  if (value.get_den() != 1) throw Error("internal: pattern value is not an integer");
  return value.get_num();
}

// ------------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

json rational_json(const BigRat& x) { return x.get_str(); }

BigRat rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return BigRat(static_cast<long>(j.get<long long>()));
  throw Error("linear representation entries must be decimal strings");
}

Vector vector_from(const json& j) {
  if (!j.is_array()) throw Error("expected an array");
  Vector out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

}  // namespace

std::string to_json(const LinRep& lr) {
  json out = json::object();
  out["system"] = lr.system().tag();
  json v = json::array(), w = json::array();
  for (const auto& x : lr.v()) v.push_back(rational_json(x));
  for (const auto& x : lr.w()) w.push_back(rational_json(x));
  json mats = json::object();
  for (const auto& [d, m] : lr.mats()) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
      rows.push_back(std::move(row));
    }
    mats[std::to_string(d)] = std::move(rows);
  }
  out["v"] = std::move(v);
  out["mats"] = std::move(mats);
  out["w"] = std::move(w);
  return out.dump(2) + "\n";
}

LinRep from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("linear representation JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("system") || !j.contains("v") || !j.contains("mats") || !j.contains("w")) {
    throw Error("linear representation JSON needs system, v, mats and w");
  }
  std::map<unsigned, Matrix> mats;
  for (const auto& [key, rows] : j["mats"].items()) {
    std::vector<std::vector<BigRat>> parsed;
    for (const auto& row : rows) parsed.push_back(vector_from(row));
    unsigned digit;
    try {
      digit = static_cast<unsigned>(std::stoul(key));
    } catch (const std::exception&) {
      throw Error("bad digit key '" + key + "'");
    }
    mats.emplace(digit, Matrix::from_rows(parsed));
  }
  return LinRep(System::parse(j["system"].get<std::string>()), vector_from(j["v"]), std::move(mats),
                vector_from(j["w"]));
}

std::vector<std::string> reference_linrep_names() {
  return {"tmsum", "pd", "mw", "pf", "le1", "le2", "bs", "sc", "rs", "ftm"};
}

LinRep reference_linrep(std::string_view name) {
  return from_json(embedded_file("fixtures/" + std::string(name) + ".json"));
}

}  // namespace syncsum::linrep
