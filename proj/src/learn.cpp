#include "syncsum/learn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace syncsum::learn {

using automata::Alphabet;
using automata::Dfa;
using automata::State;
using automata::Symbol;
using automata::Word;
using numeration::System;

// ------------------------------------------------------------------ oracle

MembershipOracle::MembershipOracle(linrep::LinRep f, System n_system, System s_system,
                                   std::optional<sequences::Dfao> sequence)
    : f_(std::move(f)),
      alphabet_({n_system, s_system}),
      tracks_{{"n", n_system}, {"s", s_system}},
      sequence_(std::move(sequence)) {
  if (!(f_.system() == n_system)) throw Error("oracle track mismatch: function is over " + f_.system().tag());
  if (n_system.order() != numeration::DigitOrder::msd || s_system.order() != numeration::DigitOrder::msd) {
    throw Error("oracle tracks must be read msd first");
  }
}

MembershipOracle MembershipOracle::for_sequence(std::string_view name, std::optional<System> s_system) {
  const std::string seq = sequences::canonical_name(name);
  const auto d = sequences::catalog(seq);
  const System n_sys = d.system.as_msd();
  if (!s_system) s_system = seq == "CA" ? System::base(2) : n_sys;
  MembershipOracle out(linrep::derive_running_sum_linrep(d), n_sys, *s_system, d);
  out.name_ = seq + "sum";
  return out;
}

BigInt MembershipOracle::value(const BigInt& n) {
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  BigInt v = linrep::eval_linrep(f_, n);
  cache_.emplace(n, v);
  return v;
}

namespace {

bool tracks_valid(const Alphabet& ab, const Word& word) {
  for (std::size_t t = 0; t < ab.arity(); ++t) {
    if (!ab.tracks()[t].is_fibonacci()) continue;
    std::uint8_t prev = 0;
    for (Symbol s : word) {
      const std::uint8_t d = ab.digit(s, t);
      if (d && prev) return false;
      prev = d;
    }
  }
  return true;
}

std::string show(const std::vector<BigInt>& v) { return "(n=" + v[0].get_str() + ", s=" + v[1].get_str() + ")"; }

}  // namespace

bool MembershipOracle::member(const Word& word) {
  ++queries_;
  if (!tracks_valid(alphabet_, word)) return false;
  const auto v = alphabet_.decode_values(word);
  return value(v[0]) == v[1];
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::proved:
      return "proved";
    case Outcome::evaluation_verified:
      return "evaluation_verified";
    case Outcome::candidate_failed:
      return "candidate_failed";
    case Outcome::diverged:
      return "diverged";
  }
  return "?";
}

// ------------------------------------------------------------------ learner

namespace {

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word append(const Word& a, Symbol s) {
  Word out = a;
  out.push_back(s);
  return out;
}

class Learner {
 public:
  Learner(MembershipOracle& oracle, const LearnOptions& options)
      : oracle_(oracle), options_(options), k_(oracle.alphabet().size()), rng_(options.seed) {
    E_.push_back({});
    add_access_word({});
  }

  LearnResult run() {
    LearnResult result;
    const std::size_t max_rounds = 8 * options_.max_states + 16;
    while (true) {
      if (!close()) {
        result.outcome = Outcome::diverged;
        note("table exceeds " + std::to_string(options_.max_states) + " states (|S|=" + std::to_string(S_.size()) +
             ")");
        break;
      }
      hypothesis_ = build();
      ++result.stats.rounds;
      result.stats.state_history.push_back(hypothesis_.num_states());
      note("round " + std::to_string(result.stats.rounds) + ": hypothesis with " +
           std::to_string(hypothesis_.num_states()) + " states (|S|=" + std::to_string(S_.size()) +
           ", |E|=" + std::to_string(E_.size()) + ")");
      if (result.stats.rounds > max_rounds) {
        result.outcome = Outcome::diverged;
        note("round limit reached");
        break;
      }
      std::optional<Word> cex = approximate_equivalence();
      if (!cex) {
        auto verdict = verify(result);
        if (verdict) {
          result.outcome = *verdict;
          break;
        }
        cex = verification_counterexample_;
        if (!cex) {
          result.outcome = Outcome::candidate_failed;
          break;
        }
      }
      result.last_counterexample = cex;
      add_suffixes(*cex);
    }
    result.hypothesis = hypothesis_;
    if (!result.predicate && hypothesis_.num_states() > 0) result.predicate = predicate();
    result.stats.states = hypothesis_.num_states();
    result.stats.membership_queries = queries_;
    note("outcome: " + to_string(result.outcome) + " after " + std::to_string(result.stats.rounds) + " rounds, " +
         std::to_string(result.stats.states) + " states, " + std::to_string(queries_) + " membership queries");
    result.transcript = std::move(transcript_);
    return result;
  }

 private:
  MembershipOracle& oracle_;
  LearnOptions options_;
  Symbol k_;
  std::mt19937_64 rng_;
  std::vector<Word> S_;
  std::vector<Word> E_;
  std::set<Word> E_set_{Word{}};
  std::vector<std::vector<bool>> rows_;                  // per access word
  std::vector<std::vector<std::vector<bool>>> next_rows_;  // per access word and symbol
  std::map<std::vector<bool>, State> index_;
  std::map<Word, bool> cache_;
  std::uint64_t queries_ = 0;
  Dfa hypothesis_;
  std::optional<Word> verification_counterexample_;
  std::vector<std::string> transcript_;

  void note(std::string line) { transcript_.push_back(std::move(line)); }

  bool member(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    ++queries_;
    const bool v = oracle_.member(w);
    cache_.emplace(w, v);
    return v;
  }

  std::vector<bool> row(const Word& u) {
    std::vector<bool> r;
    for (const auto& e : E_) r.push_back(member(concat(u, e)));
    return r;
  }

  void add_access_word(const Word& u) {
    S_.push_back(u);
    rows_.push_back(row(u));
    index_.emplace(rows_.back(), static_cast<State>(S_.size() - 1));
    std::vector<std::vector<bool>> next;
    for (Symbol a = 0; a < k_; ++a) next.push_back(row(append(u, a)));
    next_rows_.push_back(std::move(next));
  }

  // Makes every one-symbol extension's row appear among the access rows.
  bool close() {
    for (std::size_t i = 0; i < S_.size(); ++i) {
      for (Symbol a = 0; a < k_; ++a) {
        if (index_.count(next_rows_[i][a])) continue;
        if (S_.size() >= options_.max_states) return false;
        add_access_word(append(S_[i], a));
      }
    }
    return true;
  }

  void add_suffixes(const Word& cex) {
    std::vector<Word> fresh;
    for (std::size_t i = 0; i <= cex.size(); ++i) {
      Word suffix(cex.begin() + static_cast<std::ptrdiff_t>(i), cex.end());
      if (E_set_.insert(suffix).second) fresh.push_back(suffix);
    }
    for (const auto& e : fresh) {
      E_.push_back(e);
      for (std::size_t i = 0; i < S_.size(); ++i) {
        rows_[i].push_back(member(concat(S_[i], e)));
        for (Symbol a = 0; a < k_; ++a) next_rows_[i][a].push_back(member(concat(append(S_[i], a), e)));
      }
    }
    index_.clear();
    for (std::size_t i = 0; i < S_.size(); ++i) index_.emplace(rows_[i], static_cast<State>(i));
  }

  Dfa build() const {
    Dfa h;
    h.alphabet = oracle_.alphabet();
    h.initial = 0;
    for (std::size_t i = 0; i < S_.size(); ++i) h.add_state(rows_[i][0]);
    for (std::size_t i = 0; i < S_.size(); ++i) {
      for (Symbol a = 0; a < k_; ++a) h.set(static_cast<State>(i), a, index_.at(next_rows_[i][a]));
    }
    return h;
  }

  void report(const char* source, const Word& w) {
    auto trace = counterexample_trace(oracle_, hypothesis_, w);
    note(std::string("  counterexample from ") + source + ": " + trace.text);
  }

  // ---- approximate equivalence

  std::optional<Word> exhaustive() {
    const auto& ab = oracle_.alphabet();
    std::size_t len = options_.test_len;
    // Keep the sweep under a few million words.
    double total = 0;
    for (std::size_t l = 0; l <= len; ++l) {
      total += std::pow(static_cast<double>(k_), static_cast<double>(l));
      if (total > 4e6) {
        len = l == 0 ? 0 : l - 1;
        break;
      }
    }
    const System n_sys = ab.tracks()[0], s_sys = ab.tracks()[1];
    // f(n) for every n with at most `len` digits.
    BigInt n_limit = n_sys.is_fibonacci() ? numeration::fibonacci_number(static_cast<unsigned>(len) + 2)
                                          : [&] {
                                              BigInt p = 1;
                                              for (std::size_t i = 0; i < len; ++i) p *= n_sys.radix();
                                              return p;
                                            }();
    std::vector<std::uint64_t> f(n_limit.get_ui());
    for (std::uint64_t n = 0; n < f.size(); ++n) {
      BigInt v = oracle_.value(n);
      f[n] = v.fits_ulong_p() ? v.get_ui() : UINT64_MAX;
    }
    struct TrackValue {
      std::uint64_t value = 0, shifted = 0;  // Zeckendorf keeps the value with weights moved down one place
      std::uint8_t last = 0;
      bool valid = true;
    };
    auto step = [](const System& sys, TrackValue t, std::uint8_t d) {
      if (sys.is_fibonacci()) {
        TrackValue u;
        u.value = t.value + t.shifted + d;
        u.shifted = t.value + d;
        u.last = d;
        u.valid = t.valid && !(d && t.last);
        return u;
      }
      t.value = t.value * sys.radix() + d;
      return t;
    };
    Word word;
    std::optional<Word> found;
    std::function<void(std::size_t, State, TrackValue, TrackValue)> dfs = [&](std::size_t remaining, State q,
                                                                               TrackValue n, TrackValue s) {
      if (found) return;
      if (remaining == 0) {
        const bool truth = n.valid && s.valid && n.value < f.size() && f[n.value] == s.value;
        if (truth != hypothesis_.accepting[q]) found = word;
        return;
      }
      for (Symbol a = 0; a < k_ && !found; ++a) {
        word.push_back(a);
        dfs(remaining - 1, hypothesis_.next(q, a), step(n_sys, n, ab.digit(a, 0)), step(s_sys, s, ab.digit(a, 1)));
        word.pop_back();
      }
    };
    for (std::size_t l = 0; l <= len && !found; ++l) dfs(l, hypothesis_.initial, {}, {});
    return found;
  }

  std::uint64_t below(std::uint64_t m) { return rng_() % m; }

  std::optional<Word> sampled() {
    const auto& ab = oracle_.alphabet();
    const std::size_t max_len = 4 * options_.test_len;
    // Points on and next to the graph, where random words rarely land.
    for (std::size_t i = 0; i < options_.random_words / 5; ++i) {
      const std::size_t len = 1 + below(max_len);
      numeration::Digits digits(len);
      std::uint8_t prev = 0;
      for (auto& d : digits) {
        d = static_cast<std::uint8_t>(below(ab.tracks()[0].radix()));
        if (ab.tracks()[0].is_fibonacci() && prev) d = 0;
        prev = d;
      }
      const BigInt n = numeration::value_of(ab.tracks()[0], digits);
      const BigInt s = oracle_.value(n);
      for (const BigInt& t : {s, BigInt(s + 1), s == 0 ? BigInt(s + 2) : BigInt(s - 1)}) {
        std::vector<BigInt> values{n, t};
        Word w = ab.encode_values(values, below(3) + len);
        if (hypothesis_.accepts(w) != member(w)) return w;
      }
    }
    for (std::size_t i = 0; i < options_.random_words; ++i) {
      Word w(below(max_len + 1));
      for (auto& a : w) a = static_cast<Symbol>(below(k_));
      if (hypothesis_.accepts(w) != member(w)) return w;
    }
    return std::nullopt;
  }

  std::optional<Word> approximate_equivalence() {
    if (auto w = exhaustive()) {
      report("exhaustive check", *w);
      return w;
    }
    if (auto w = sampled()) {
      report("random sampling", *w);
      return w;
    }
    return std::nullopt;
  }

  // ---- verification

  logic::Predicate predicate() const {
    const auto& tracks = oracle_.tracks();
    auto copy = oracle_;  // semantics for replay, independent of the learner
    auto semantics = [copy](const std::vector<BigInt>& v) mutable { return copy.value(v[0]) == v[1]; };
    return logic::from_rel(hypothesis_, tracks, oracle_.name().empty() ? "learned" : oracle_.name(), semantics);
  }

  // A word where the hypothesis (not its saturation) disagrees with the oracle on these values.
  std::optional<Word> disagreement(const std::vector<BigInt>& values) {
    const auto& ab = oracle_.alphabet();
    Word w = ab.encode_values(values);
    for (std::size_t pad = 0; pad <= hypothesis_.num_states() + 1; ++pad) {
      if (hypothesis_.accepts(w) != member(w)) return w;
      w.insert(w.begin(), Alphabet::zero());
    }
    return std::nullopt;
  }

  std::optional<Word> from_report(const logic::VerificationReport& r) {
    if (!r.counterexample) return std::nullopt;
    const auto& c = *r.counterexample;
    std::vector<std::vector<BigInt>> candidates;
    if (r.query.rfind("functional", 0) == 0) {
      candidates = {{c[0], c[1]}, {c[0], c[2]}};
    } else if (r.query.rfind("total", 0) == 0) {
      candidates = {{c[0], oracle_.value(c[0])}};
    } else {
      candidates = {{c[0], c[1]}, {c[0] + 1, c[1] + c[2]}, {c[0] + 1, oracle_.value(c[0] + 1)}};
    }
    for (const auto& v : candidates) {
      if (auto w = disagreement(v)) return w;
    }
    return std::nullopt;
  }

  // Returns the final outcome, or nothing when a counterexample sends learning on.
  std::optional<Outcome> verify(LearnResult& result) {
    verification_counterexample_.reset();
    logic::Predicate p = predicate();
    const bool fib = oracle_.tracks()[0].system.is_fibonacci() || oracle_.tracks()[1].system.is_fibonacci();
    std::vector<std::function<logic::VerificationReport()>> checks{
        [&] { return logic::verify_functional(p); },
        [&] { return logic::verify_total(p); },
    };
    if (!fib && oracle_.sequence()) checks.push_back([&] { return logic::verify_inductive(p, *oracle_.sequence()); });
    std::vector<logic::VerificationReport> reports;
    for (const auto& check : checks) {
      auto r = check();
      note("  verify " + r.query.substr(0, r.query.find(':')) + ": " + (r.verdict ? "TRUE" : "FALSE") +
           (r.detail.empty() ? "" : " (" + r.detail + ")"));
      reports.push_back(r);
      if (!r.verdict) {
        verification_counterexample_ = from_report(r);
        if (verification_counterexample_) {
          report("verification", *verification_counterexample_);
        } else {
          note("  verification failed without an oracle disagreement");
          result.reports = reports;
          result.predicate = p;
        }
        return std::nullopt;
      }
    }
    result.reports = reports;
    result.predicate = p;
    if (!fib && oracle_.sequence()) return Outcome::proved;
    // Evaluation check in place of the inductive proof.
    for (std::uint64_t n = 0; n <= 100000; ++n) {
      std::vector<BigInt> v{BigInt(n), oracle_.value(n)};
      if (!p.accepts(v)) {
        note("  value check failed at n=" + std::to_string(n));
        verification_counterexample_ = disagreement(v);
        if (verification_counterexample_) return std::nullopt;
        return Outcome::candidate_failed;
      }
    }
    note("  value check: p(n, f(n)) for all n <= 100000");
    return Outcome::evaluation_verified;
  }
};

}  // namespace

LearnResult learn_sync(MembershipOracle& oracle, const LearnOptions& options) {
  if (options.max_states < 1) throw Error("max_states must be at least 1");
  if (options.test_len < 1) throw Error("test_len must be at least 1");
  Learner learner(oracle, options);
  return learner.run();
}

Trace counterexample_trace(MembershipOracle& oracle, const Dfa& hypothesis, const Word& word) {
  Trace t;
  const auto& ab = oracle.alphabet();
  if (!(hypothesis.alphabet == ab)) throw Error("hypothesis and oracle use different tracks");
  t.values = ab.decode_values(word);
  t.valid = tracks_valid(ab, word);
  t.oracle = oracle.member(word);
  t.hypothesis = hypothesis.accepts(word);
  t.text = show(t.values) + " length " + std::to_string(word.size()) + (t.valid ? "" : " (non-canonical)") +
           ": oracle " + (t.oracle ? "true" : "false") + ", hypothesis " + (t.hypothesis ? "true" : "false");
  return t;
}

Trace counterexample_trace(MembershipOracle& oracle, const LearnResult& result, const Word& word) {
  return counterexample_trace(oracle, result.hypothesis, word);
}

}  // namespace syncsum::learn
