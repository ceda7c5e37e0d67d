#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "syncsum/automata.hpp"
#include "syncsum/numeration.hpp"

namespace syncsum::sequences {

using automata::State;

/// Deterministic finite automaton with output. Digits are fed in the system's
/// reading order: most significant first for msd systems, least first for lsd.
struct Dfao {
  numeration::System system = numeration::System::base(2);
  State initial = 0;
  std::vector<State> delta;  // state * radix + digit
  std::vector<int> output;

  State num_states() const noexcept { return static_cast<State>(output.size()); }
  State next(State q, unsigned digit) const { return delta[static_cast<std::size_t>(q) * system.radix() + digit]; }
  /// Sorted distinct outputs of reachable states.
  std::vector<int> output_values() const;
};

int eval(const Dfao& d, const BigInt& n);
int eval(const Dfao& d, std::uint64_t n);

/// Minimal Moore machine with breadth-first canonical numbering.
Dfao minimize(const Dfao& d);
bool isomorphic(const Dfao& a, const Dfao& b);

struct Morphism {
  std::vector<std::vector<int>> images;  // letter -> image word
  std::vector<int> coding;               // letter -> output
};

Dfao dfao_from_morphism(const Morphism& m, int start);

/// Equivalent machine reading msd first (identity for msd and Zeckendorf machines).
/// lsd machines must be insensitive to trailing zeros.
Dfao msd_form(const Dfao& d);

/// One-track msd acceptor for { n : d(n) = value } over zero-padded words.
/// lsd machines are reversed; Zeckendorf words are restricted to canonical ones.
automata::Dfa acceptor(const Dfao& d, int value);

automata::TextAutomaton to_text(const Dfao& d);
Dfao from_text(const automata::TextAutomaton& t);
std::string to_string(const Dfao& d);
Dfao parse_dfao(const std::string& text);

// ---- catalog --------------------------------------------------------------

/// T, CA, sb, ttm, gbar, pd, mw, pf, le, bs, sc, rs, ftm.
const std::vector<std::string>& catalog_names();
/// Case-insensitive lookup; throws Error listing the catalog for unknown names.
std::string canonical_name(std::string_view name);
Dfao catalog(std::string_view name);
bool is_binary(std::string_view name);

/// Definitional value computed without automata.
int oracle(std::string_view name, std::uint64_t n);
/// Sum of oracle(name, i) over 0 <= i <= n, by linear scan.
std::uint64_t running_sum_oracle(std::string_view name, std::uint64_t n);
/// All running sums for 0..n, by linear scan.
std::vector<std::uint64_t> running_sums(std::string_view name, std::uint64_t n);

}  // namespace syncsum::sequences
