#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syncsum/numeration.hpp"

namespace syncsum::automata {

using State = std::uint32_t;
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Product alphabet of aligned digit tuples. Track 0 is the most significant
/// component of a symbol's index, so sorted symbol order is lexicographic on tuples.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<numeration::System> tracks);

  const std::vector<numeration::System>& tracks() const noexcept { return tracks_; }
  std::size_t arity() const noexcept { return tracks_.size(); }
  Symbol size() const noexcept { return size_; }

  Symbol encode(std::span<const std::uint8_t> digits) const;
  std::vector<std::uint8_t> decode(Symbol symbol) const;
  std::uint8_t digit(Symbol symbol, std::size_t track) const;
  /// The all-zero tuple (always symbol 0).
  static constexpr Symbol zero() noexcept { return 0; }

  /// Encodes values as an aligned, zero-padded tuple word of at least `min_length` symbols.
  Word encode_values(std::span<const BigInt> values, std::size_t min_length = 0) const;
  /// Per-track values of a tuple word. Zeckendorf tracks are decoded even if non-canonical.
  std::vector<BigInt> decode_values(const Word& word) const;

  std::string format_symbol(Symbol symbol) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tracks_ == b.tracks_; }

 private:
  std::vector<numeration::System> tracks_;
  std::vector<Symbol> stride_;
  Symbol size_ = 1;
};

/// Complete DFA: delta is total and dead states stay explicit.
struct Dfa {
  Alphabet alphabet;
  State initial = 0;
  std::vector<bool> accepting;
  std::vector<State> delta;  // state * alphabet.size() + symbol

  State num_states() const noexcept { return static_cast<State>(accepting.size()); }
  State next(State q, Symbol a) const { return delta[static_cast<std::size_t>(q) * alphabet.size() + a]; }
  State run(std::span<const Symbol> word) const;
  bool accepts(std::span<const Symbol> word) const { return accepting[run(word)]; }
  /// Adds a state with every transition pointing to itself; returns its id.
  State add_state(bool accept);
  void set(State from, Symbol a, State to) { delta[static_cast<std::size_t>(from) * alphabet.size() + a] = to; }
};

/// Epsilon-free NFA.
struct Nfa {
  Alphabet alphabet;
  std::vector<State> initial;
  std::vector<bool> accepting;
  std::vector<std::vector<State>> delta;  // state * alphabet.size() + symbol -> successors

  State num_states() const noexcept { return static_cast<State>(accepting.size()); }
  const std::vector<State>& next(State q, Symbol a) const {
    return delta[static_cast<std::size_t>(q) * alphabet.size() + a];
  }
};

enum class BoolOp { conjunction, disjunction };

Dfa product(const Dfa& a, const Dfa& b, BoolOp op);
Dfa complement(const Dfa& a);
Dfa determinize(const Nfa& a);
/// Unique minimal DFA, unreachable states removed, states numbered in
/// breadth-first discovery order over sorted symbols.
Dfa minimize(const Dfa& a);
/// Moore-style minimization: states are split by `labels` instead of acceptance.
/// Returns the minimal automaton (acceptance copied from `a`, must be label-compatible)
/// and writes the label of each new state to `out_labels`.
Dfa minimize_labeled(const Dfa& a, const std::vector<long>& labels, std::vector<long>& out_labels);
/// Shortest accepted word (breadth-first, sorted symbols) or nothing when empty.
std::optional<Word> find_accepted(const Dfa& a);
bool is_empty(const Dfa& a);
/// Shortest word on which the languages differ, or nothing when equivalent.
std::optional<Word> find_difference(const Dfa& a, const Dfa& b);
bool equivalent(const Dfa& a, const Dfa& b);
/// Automata with equal structure after canonical renumbering.
bool isomorphic(const Dfa& a, const Dfa& b);

Nfa as_nfa(const Dfa& a);
/// Accepts the mirror image of L(a).
Nfa reverse(const Dfa& a);
/// Reads the language through a larger alphabet: track i of `a` is read from
/// track `track_map[i]` of `target`; other target tracks are ignored.
Dfa cylindrify(const Dfa& a, const Alphabet& target, std::span<const std::size_t> track_map);
/// Deletes a track, merging symbols that differed only there.
Nfa project_away(const Dfa& a, std::size_t track);
/// L' = { w : 0^k w in L for some k }, computed on an NFA before determinization.
Dfa saturate_padding(const Nfa& a);
Dfa saturate_padding(const Dfa& a);

/// Accepts every word over the alphabet (Zeckendorf tracks restricted to no "11").
Dfa valid_words(const Alphabet& alphabet);
Dfa all_words(const Alphabet& alphabet);
Dfa no_words(const Alphabet& alphabet);

// Arithmetic relations over aligned msd tuples.
Dfa rel_eq(numeration::System sys);
Dfa rel_lt(numeration::System sys);
Dfa rel_leq(numeration::System sys);
/// Tracks (x, y, z) accepting x + y = z. Base systems only.
Dfa rel_add(unsigned base);
/// Tracks (x, y) accepting y = x + 1. Base systems only.
Dfa rel_succ(numeration::System sys);
/// One track accepting exactly the zero-padded representations of c.
Dfa rel_const(const BigInt& c, numeration::System sys);

/// Shared text format. `labels[q]` is the acceptance flag (0/1) or an output value.
struct TextAutomaton {
  std::vector<numeration::System> tracks;
  State initial = 0;
  std::vector<long> labels;
  std::vector<State> delta;  // state * alphabet size + symbol
};

void write_text(std::ostream& out, const TextAutomaton& automaton);
TextAutomaton read_text(std::istream& in);
TextAutomaton to_text(const Dfa& a);
Dfa from_text(const TextAutomaton& t);
std::string to_string(const Dfa& a);
Dfa parse_dfa(const std::string& text);

}  // namespace syncsum::automata
