#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncsum/automata.hpp"
#include "syncsum/sequences.hpp"

namespace syncsum::logic {

struct Track {
  std::string name;
  numeration::System system;
  friend bool operator==(const Track&, const Track&) = default;
};

using Assignment = std::map<std::string, BigInt, std::less<>>;

/// Defining formula of a predicate, kept so its verdicts can be replayed
/// against oracles without automata.
struct Formula {
  enum class Kind { atom, conj, disj, neg, exists, forall, rename };
  Kind kind = Kind::atom;
  std::string text;                                       // atom description
  std::vector<std::string> free;                          // atom track names
  std::function<bool(const std::vector<BigInt>&)> holds;  // atom semantics on `free`
  std::vector<std::shared_ptr<const Formula>> args;
  std::string variable;                        // quantified variable
  std::map<std::string, std::string> renames;  // new name -> old name
};
using FormulaPtr = std::shared_ptr<const Formula>;

/// Direct evaluation; quantifiers range over 0..bound.
bool evaluate(const Formula& f, const Assignment& values, unsigned long bound);
std::string describe(const Formula& f);

/// Relation on named non-negative integers, represented by a minimal
/// multi-track DFA over aligned msd digit tuples. Acceptance never depends
/// on leading zero columns, and Zeckendorf tracks only accept canonical words.
class Predicate {
 public:
  Predicate(std::vector<Track> tracks, automata::Dfa dfa, FormulaPtr formula);

  const std::vector<Track>& tracks() const noexcept { return tracks_; }
  const automata::Dfa& dfa() const noexcept { return dfa_; }
  const FormulaPtr& formula() const noexcept { return formula_; }
  std::size_t arity() const noexcept { return tracks_.size(); }
  std::size_t index_of(std::string_view name) const;
  std::vector<std::string> names() const;

  bool accepts(std::span<const BigInt> values) const;
  bool accepts(const Assignment& values) const;
  bool is_empty() const { return automata::is_empty(dfa_); }
  /// Shortest accepted tuple, decoded per track.
  std::optional<std::vector<BigInt>> witness() const;

 private:
  std::vector<Track> tracks_;
  automata::Dfa dfa_;
  FormulaPtr formula_;
};

// ---- atoms ------------------------------------------------------------------

/// One track: d(name) = value. lsd machines are converted to msd form.
Predicate lift(const sequences::Dfao& d, int value, std::string name = "n");
/// Like lift, but replays through the catalog oracle of `sequence`.
Predicate lift(std::string_view sequence, int value, std::string name = "n");
/// Wraps an automaton; `semantics` (if given) is used for replay, otherwise membership.
Predicate from_rel(const automata::Dfa& r, std::vector<Track> tracks, std::string text = "rel",
                   std::function<bool(const std::vector<BigInt>&)> semantics = {});

Predicate eq(const std::string& x, const std::string& y, numeration::System sys);
Predicate lt(const std::string& x, const std::string& y, numeration::System sys);
Predicate leq(const std::string& x, const std::string& y, numeration::System sys);
/// y = x + 1 (base systems).
Predicate succ(const std::string& x, const std::string& y, numeration::System sys);
/// x + y = z (base systems).
Predicate add(const std::string& x, const std::string& y, const std::string& z, numeration::System sys);
Predicate constant(const std::string& x, const BigInt& c, numeration::System sys);

// ---- connectives ------------------------------------------------------------

/// Tracks are matched by name; the result lists a's tracks, then b's new ones.
Predicate p_and(const Predicate& a, const Predicate& b);
Predicate p_or(const Predicate& a, const Predicate& b);
Predicate p_not(const Predicate& p);
Predicate p_exists(const Predicate& p, std::string_view track);
Predicate p_forall(const Predicate& p, std::string_view track);
Predicate rename(const Predicate& p, std::string_view from, std::string to);
/// Same relation with tracks listed in `order` (a permutation of p's names).
Predicate reorder(const Predicate& p, const std::vector<std::string>& order);
/// Language equality after aligning tracks by name.
bool equivalent(const Predicate& a, const Predicate& b);

// ---- verification -------------------------------------------------------------

struct VerificationReport {
  std::string query;
  bool verdict = false;
  std::optional<std::vector<BigInt>> counterexample;
  std::string detail;
  std::vector<std::pair<std::string, std::size_t>> state_counts;
  double seconds = 0;
};

/// forall n, s, t: p(n,s) and p(n,t) imply s = t. Counterexample (n, s, t).
VerificationReport verify_functional(const Predicate& p);
/// forall n exists s: p(n,s). Counterexample (n).
VerificationReport verify_total(const Predicate& p);
/// p(0, d(0)) and forall n, s, u: p(n,s) and d(n+1) = u imply p(n+1, s+u).
/// Counterexample (n, s, u); the base case failing reports (0, d(0), d(0)).
VerificationReport verify_inductive(const Predicate& p, const sequences::Dfao& d);

/// A(i, k): the i-th one of d (counting from 0) sits at index k.
/// B must have tracks (index, sum) and is verified functional and total first.
Predicate index_from_sum(const Predicate& b, const sequences::Dfao& d);
/// B(k, s): d(0) + ... + d(k) = s, from an index predicate A(i, k).
Predicate sum_from_index(const Predicate& a, const sequences::Dfao& d);

/// Automaton text format; a "# names:" comment line records track names.
std::string to_text(const Predicate& p);
Predicate parse_predicate(const std::string& text);

}  // namespace syncsum::logic
