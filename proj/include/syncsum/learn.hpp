#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syncsum/linrep.hpp"
#include "syncsum/logic.hpp"

namespace syncsum::learn {

/// Graph of f as a language: a tuple word over (n, s) is a member iff it
/// decodes to canonical-padded values with s = f(n).
class MembershipOracle {
 public:
  MembershipOracle(linrep::LinRep f, numeration::System n_system, numeration::System s_system,
                   std::optional<sequences::Dfao> sequence = std::nullopt);
  /// Running sum of a catalog sequence; the s track defaults to the
  /// sequence's system (base 2 for CA, which is (3,2)-synchronised).
  static MembershipOracle for_sequence(std::string_view name, std::optional<numeration::System> s_system = {});

  const automata::Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<logic::Track>& tracks() const noexcept { return tracks_; }
  const std::optional<sequences::Dfao>& sequence() const noexcept { return sequence_; }
  const std::string& name() const noexcept { return name_; }

  bool member(const automata::Word& word);
  bool member(const BigInt& n, const BigInt& s) { return value(n) == s; }
  BigInt value(const BigInt& n);
  std::uint64_t queries() const noexcept { return queries_; }

 private:
  linrep::LinRep f_;
  automata::Alphabet alphabet_;
  std::vector<logic::Track> tracks_;
  std::optional<sequences::Dfao> sequence_;
  std::string name_;
  std::map<BigInt, BigInt> cache_;
  std::uint64_t queries_ = 0;
};

enum class Outcome { proved, evaluation_verified, candidate_failed, diverged };
std::string to_string(Outcome outcome);

struct LearnOptions {
  std::size_t max_states = 64;
  std::size_t test_len = 8;
  std::uint64_t seed = 0;
  std::size_t random_words = 10000;
};

struct LearnStats {
  std::uint64_t membership_queries = 0;
  std::size_t rounds = 0;
  std::size_t states = 0;
  std::vector<std::size_t> state_history;  // hypothesis size per round
};

struct LearnResult {
  Outcome outcome = Outcome::diverged;
  automata::Dfa hypothesis;                  // last hypothesis as learned
  std::optional<logic::Predicate> predicate;  // padding-saturated hypothesis
  std::vector<logic::VerificationReport> reports;
  std::optional<automata::Word> last_counterexample;
  LearnStats stats;
  std::vector<std::string> transcript;
};

LearnResult learn_sync(MembershipOracle& oracle, const LearnOptions& options = {});

struct Trace {
  std::vector<BigInt> values;
  bool valid = true;  // canonical on every Zeckendorf track
  bool oracle = false;
  bool hypothesis = false;
  std::string text;
};

Trace counterexample_trace(MembershipOracle& oracle, const automata::Dfa& hypothesis, const automata::Word& word);
Trace counterexample_trace(MembershipOracle& oracle, const LearnResult& result, const automata::Word& word);

}  // namespace syncsum::learn
