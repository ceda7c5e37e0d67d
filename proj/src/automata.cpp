#include "syncsum/automata.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace syncsum::automata {

using numeration::System;

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<System> tracks) : tracks_(std::move(tracks)) {
  stride_.assign(tracks_.size(), 1);
  size_ = 1;
  for (std::size_t i = tracks_.size(); i-- > 0;) {
    stride_[i] = size_;
    size_ *= tracks_[i].radix();
    if (size_ > (1u << 20)) throw Error("tuple alphabet too large");
  }
}

Symbol Alphabet::encode(std::span<const std::uint8_t> digits) const {
  if (digits.size() != tracks_.size()) throw Error("tuple arity mismatch");
  Symbol s = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= tracks_[i].radix()) throw Error("digit out of range for track " + std::to_string(i));
    s += digits[i] * stride_[i];
  }
  return s;
}

std::uint8_t Alphabet::digit(Symbol symbol, std::size_t track) const {
  return static_cast<std::uint8_t>((symbol / stride_[track]) % tracks_[track].radix());
}

std::vector<std::uint8_t> Alphabet::decode(Symbol symbol) const {
  std::vector<std::uint8_t> out(tracks_.size());
  for (std::size_t i = 0; i < tracks_.size(); ++i) out[i] = digit(symbol, i);
  return out;
}

Word Alphabet::encode_values(std::span<const BigInt> values, std::size_t min_length) const {
  if (values.size() != tracks_.size()) throw Error("tuple arity mismatch");
  std::vector<numeration::Numeral> numerals;
  std::size_t width = min_length;
  for (std::size_t i = 0; i < values.size(); ++i) {
    numerals.push_back(numeration::to_digits(values[i], tracks_[i].as_msd()));
    width = std::max(width, numerals.back().digits.size());
  }
  Word word(width, 0);
  for (std::size_t i = 0; i < numerals.size(); ++i) {
    const auto& d = numerals[i].digits;
    const std::size_t offset = width - d.size();
    for (std::size_t j = 0; j < d.size(); ++j) word[offset + j] += d[j] * stride_[i];
  }
  return word;
}

std::vector<BigInt> Alphabet::decode_values(const Word& word) const {
  std::vector<BigInt> out;
  numeration::Digits digits(word.size());
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    for (std::size_t j = 0; j < word.size(); ++j) digits[j] = digit(word[j], i);
    out.push_back(numeration::value_of(tracks_[i].as_msd(), digits, true));
  }
  return out;
}

std::string Alphabet::format_symbol(Symbol symbol) const {
  std::string out;
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(digit(symbol, i));
  }
  return out;
}

// --------------------------------------------------------------------- Dfa

State Dfa::run(std::span<const Symbol> word) const {
  State q = initial;
  for (Symbol a : word) q = next(q, a);
  return q;
}

State Dfa::add_state(bool accept) {
  const State id = num_states();
  accepting.push_back(accept);
  delta.resize(delta.size() + alphabet.size(), id);
  return id;
}

namespace {

Dfa empty_shell(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  return d;
}

void require_same_alphabet(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet == b.alphabet)) throw Error("alphabet mismatch between automata");
}

// Renumbers the reachable part breadth-first over sorted symbols.
Dfa canonical_order(const Dfa& a) {
  const Symbol k = a.alphabet.size();
  std::vector<State> id(a.num_states(), UINT32_MAX);
  std::vector<State> order;
  id[a.initial] = 0;
  order.push_back(a.initial);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      State t = a.next(order[i], s);
      if (id[t] == UINT32_MAX) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  Dfa out = empty_shell(a.alphabet);
  out.accepting.resize(order.size());
  out.delta.resize(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.accepting[i] = a.accepting[order[i]];
    for (Symbol s = 0; s < k; ++s) out.delta[i * k + s] = id[a.next(order[i], s)];
  }
  out.initial = 0;
  return out;
}

}  // namespace

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
  require_same_alphabet(a, b);
  const Symbol k = a.alphabet.size();
  Dfa out = empty_shell(a.alphabet);
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, fresh] = ids.try_emplace(key, static_cast<State>(pairs.size()));
    if (fresh) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(a.initial, b.initial);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    out.accepting.push_back(op == BoolOp::conjunction ? (a.accepting[p] && b.accepting[q])
                                                      : (a.accepting[p] || b.accepting[q]));
    for (Symbol s = 0; s < k; ++s) out.delta.push_back(intern(a.next(p, s), b.next(q, s)));
  }
  out.initial = 0;
  return out;
}

Dfa complement(const Dfa& a) {
  Dfa out = a;
  out.accepting.flip();
  return out;
}

Dfa determinize(const Nfa& a) {
  const Symbol k = a.alphabet.size();
  Dfa out = empty_shell(a.alphabet);
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  auto intern = [&](std::vector<State> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto [it, fresh] = ids.try_emplace(set, static_cast<State>(sets.size()));
    if (fresh) sets.push_back(std::move(set));
    return it->second;
  };
  intern(a.initial);
  std::vector<State> succ;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool acc = false;
    for (State q : sets[i]) acc = acc || a.accepting[q];
    out.accepting.push_back(acc);
    for (Symbol s = 0; s < k; ++s) {
      succ.clear();
      for (State q : sets[i]) {
        const auto& n = a.next(q, s);
        succ.insert(succ.end(), n.begin(), n.end());
      }
      const State t = intern(succ);
      out.delta.push_back(t);
    }
  }
  out.initial = 0;
  return out;
}

namespace {

// Canonical order plus a label per state; used by both minimizers.
struct Labeled {
  Dfa dfa;
  std::vector<long> labels;
};

Labeled canonical_labeled(const Dfa& a, const std::vector<long>& labels) {
  Dfa c = canonical_order(a);
  // Recover which original state each canonical state came from by replaying BFS.
  const Symbol k = a.alphabet.size();
  std::vector<State> id(a.num_states(), UINT32_MAX), order{a.initial};
  id[a.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      State t = a.next(order[i], s);
      if (id[t] == UINT32_MAX) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<long> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = labels[order[i]];
  return {std::move(c), std::move(out)};
}

Labeled refine(const Dfa& input, const std::vector<long>& input_labels) {
  const Labeled start = canonical_labeled(input, input_labels);
  const Dfa& a = start.dfa;
  const Symbol k = a.alphabet.size();
  const State n = a.num_states();
  std::vector<State> cls(n);
  {
    std::map<long, State> by_label;
    for (State q = 0; q < n; ++q) {
      cls[q] = by_label.try_emplace(start.labels[q], static_cast<State>(by_label.size())).first->second;
    }
  }
  std::size_t count = 0;
  std::vector<State> signature(k + 1);
  while (true) {
    std::map<std::vector<State>, State> ids;
    std::vector<State> next_cls(n);
    for (State q = 0; q < n; ++q) {
      signature[0] = cls[q];
      for (Symbol s = 0; s < k; ++s) signature[s + 1] = cls[a.next(q, s)];
      next_cls[q] = ids.try_emplace(signature, static_cast<State>(ids.size())).first->second;
    }
    cls.swap(next_cls);
    if (ids.size() == count) break;
    count = ids.size();
  }
  Dfa quotient = empty_shell(a.alphabet);
  quotient.accepting.assign(count, false);
  quotient.delta.assign(count * k, 0);
  std::vector<long> labels(count);
  for (State q = 0; q < n; ++q) {
    quotient.accepting[cls[q]] = a.accepting[q];
    labels[cls[q]] = start.labels[q];
    for (Symbol s = 0; s < k; ++s) quotient.delta[static_cast<std::size_t>(cls[q]) * k + s] = cls[a.next(q, s)];
  }
  quotient.initial = cls[a.initial];
  return canonical_labeled(quotient, labels);
}

}  // namespace

Dfa minimize(const Dfa& a) {
  std::vector<long> labels(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) labels[q] = a.accepting[q] ? 1 : 0;
  return refine(a, labels).dfa;
}

Dfa minimize_labeled(const Dfa& a, const std::vector<long>& labels, std::vector<long>& out_labels) {
  if (labels.size() != a.num_states()) throw Error("one label per state required");
  Labeled result = refine(a, labels);
  out_labels = std::move(result.labels);
  return std::move(result.dfa);
}

std::optional<Word> find_accepted(const Dfa& a) {
  const Symbol k = a.alphabet.size();
  std::vector<std::pair<State, Symbol>> parent(a.num_states(), {UINT32_MAX, 0});
  std::vector<bool> seen(a.num_states(), false);
  std::deque<State> queue{a.initial};
  seen[a.initial] = true;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (a.accepting[q]) {
      Word w;
      for (State c = q; parent[c].first != UINT32_MAX; c = parent[c].first) w.push_back(parent[c].second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol s = 0; s < k; ++s) {
      State t = a.next(q, s);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = {q, s};
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool is_empty(const Dfa& a) { return !find_accepted(a).has_value(); }

std::optional<Word> find_difference(const Dfa& a, const Dfa& b) {
  Dfa x = product(a, b, BoolOp::conjunction);
  Dfa y = product(a, b, BoolOp::disjunction);
  // x and y share the pair numbering, so the symmetric difference is y minus x.
  Dfa diff = y;
  for (State q = 0; q < diff.num_states(); ++q) diff.accepting[q] = y.accepting[q] && !x.accepting[q];
  return find_accepted(diff);
}

bool equivalent(const Dfa& a, const Dfa& b) { return !find_difference(a, b).has_value(); }

bool isomorphic(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet == b.alphabet)) return false;
  Dfa x = canonical_order(a), y = canonical_order(b);
  return x.accepting == y.accepting && x.delta == y.delta;
}

Nfa as_nfa(const Dfa& a) {
  Nfa out;
  out.alphabet = a.alphabet;
  out.initial = {a.initial};
  out.accepting = a.accepting;
  out.delta.resize(a.delta.size());
  for (std::size_t i = 0; i < a.delta.size(); ++i) out.delta[i] = {a.delta[i]};
  return out;
}

Nfa reverse(const Dfa& a) {
  const Symbol k = a.alphabet.size();
  Nfa out;
  out.alphabet = a.alphabet;
  out.accepting.assign(a.num_states(), false);
  out.accepting[a.initial] = true;
  out.delta.resize(a.delta.size());
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.accepting[q]) out.initial.push_back(q);
    for (Symbol s = 0; s < k; ++s) out.delta[static_cast<std::size_t>(a.next(q, s)) * k + s].push_back(q);
  }
  return out;
}

Dfa cylindrify(const Dfa& a, const Alphabet& target, std::span<const std::size_t> track_map) {
  if (track_map.size() != a.alphabet.arity()) throw Error("track map arity mismatch");
  for (std::size_t i = 0; i < track_map.size(); ++i) {
    if (track_map[i] >= target.arity() || !(target.tracks()[track_map[i]] == a.alphabet.tracks()[i])) {
      throw Error("track system mismatch in cylindrification");
    }
  }
  const Symbol k = target.size();
  std::vector<Symbol> source(k);
  std::vector<std::uint8_t> digits(a.alphabet.arity());
  for (Symbol s = 0; s < k; ++s) {
    for (std::size_t i = 0; i < track_map.size(); ++i) digits[i] = target.digit(s, track_map[i]);
    source[s] = a.alphabet.encode(digits);
  }
  Dfa out = empty_shell(target);
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.delta.resize(static_cast<std::size_t>(a.num_states()) * k);
  for (State q = 0; q < a.num_states(); ++q) {
    for (Symbol s = 0; s < k; ++s) out.delta[static_cast<std::size_t>(q) * k + s] = a.next(q, source[s]);
  }
  return out;
}

Nfa project_away(const Dfa& a, std::size_t track) {
  if (track >= a.alphabet.arity()) throw Error("no such track to project");
  std::vector<System> kept;
  for (std::size_t i = 0; i < a.alphabet.arity(); ++i) {
    if (i != track) kept.push_back(a.alphabet.tracks()[i]);
  }
  Nfa out;
  out.alphabet = Alphabet(kept);
  const Symbol k = a.alphabet.size(), kk = out.alphabet.size();
  out.initial = {a.initial};
  out.accepting = a.accepting;
  out.delta.resize(static_cast<std::size_t>(a.num_states()) * kk);
  std::vector<std::uint8_t> digits;
  for (Symbol s = 0; s < k; ++s) {
    auto full = a.alphabet.decode(s);
    digits.clear();
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (i != track) digits.push_back(full[i]);
    }
    const Symbol r = out.alphabet.encode(digits);
    for (State q = 0; q < a.num_states(); ++q) {
      auto& succ = out.delta[static_cast<std::size_t>(q) * kk + r];
      State t = a.next(q, s);
      if (std::find(succ.begin(), succ.end(), t) == succ.end()) succ.push_back(t);
    }
  }
  return out;
}

Dfa saturate_padding(const Nfa& a) {
  Nfa b = a;
  std::vector<bool> in(a.num_states(), false);
  std::vector<State> stack = a.initial;
  b.initial.clear();
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    if (in[q]) continue;
    in[q] = true;
    b.initial.push_back(q);
    for (State t : a.next(q, Alphabet::zero())) stack.push_back(t);
  }
  return determinize(b);
}

Dfa saturate_padding(const Dfa& a) { return saturate_padding(as_nfa(a)); }

Dfa all_words(const Alphabet& alphabet) {
  Dfa d = empty_shell(alphabet);
  d.add_state(true);
  return d;
}

Dfa no_words(const Alphabet& alphabet) {
  Dfa d = empty_shell(alphabet);
  d.add_state(false);
  return d;
}

Dfa valid_words(const Alphabet& alphabet) {
  std::vector<std::size_t> fib;
  for (std::size_t i = 0; i < alphabet.arity(); ++i) {
    if (alphabet.tracks()[i].is_fibonacci()) fib.push_back(i);
  }
  if (fib.empty()) return all_words(alphabet);
  // State = mask of Zeckendorf tracks whose last digit was 1; one extra dead state.
  const State masks = State{1} << fib.size();
  Dfa d = empty_shell(alphabet);
  for (State m = 0; m < masks; ++m) d.add_state(true);
  const State dead = d.add_state(false);
  for (State m = 0; m < masks; ++m) {
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      State next = 0;
      bool ok = true;
      for (std::size_t j = 0; j < fib.size(); ++j) {
        const bool one = alphabet.digit(s, fib[j]) == 1;
        if (one && ((m >> j) & 1)) ok = false;
        if (one) next |= State{1} << j;
      }
      d.set(m, s, ok ? next : dead);
    }
  }
  return d;
}

namespace {

Dfa restrict_to_valid(const Dfa& d) {
  bool any_fib = false;
  for (const auto& t : d.alphabet.tracks()) any_fib = any_fib || t.is_fibonacci();
  if (!any_fib) return d;
  return minimize(product(d, valid_words(d.alphabet), BoolOp::conjunction));
}

void require_base(System sys, const char* what) {
  if (sys.is_fibonacci()) {
    throw Error(std::string("unsupported: no Fibonacci adder for ") + what);
  }
}

// States: 0 equal so far, 1 decided less, 2 dead (decided greater).
Dfa comparison(System sys, bool accept_equal) {
  sys = sys.as_msd();
  Dfa d = empty_shell(Alphabet({sys, sys}));
  const State eq = d.add_state(accept_equal);
  const State lt = d.add_state(true);
  const State gt = d.add_state(false);
  for (Symbol s = 0; s < d.alphabet.size(); ++s) {
    auto x = d.alphabet.digit(s, 0), y = d.alphabet.digit(s, 1);
    d.set(eq, s, x == y ? eq : (x < y ? lt : gt));
  }
  return restrict_to_valid(minimize(d));
}

}  // namespace

Dfa rel_eq(System sys) {
  sys = sys.as_msd();
  Dfa d = empty_shell(Alphabet({sys, sys}));
  const State ok = d.add_state(true);
  const State dead = d.add_state(false);
  for (Symbol s = 0; s < d.alphabet.size(); ++s) {
    d.set(ok, s, d.alphabet.digit(s, 0) == d.alphabet.digit(s, 1) ? ok : dead);
  }
  return restrict_to_valid(d);
}

Dfa rel_lt(System sys) { return comparison(sys, false); }
Dfa rel_leq(System sys) { return comparison(sys, true); }

Dfa rel_add(unsigned base) {
  const System sys = System::base(base);
  Dfa d = empty_shell(Alphabet({sys, sys, sys}));
  // Discrepancy c = z - x - y on the prefixes read so far; only c in {0, 1} can recover.
  const State c0 = d.add_state(true);
  const State c1 = d.add_state(false);
  const State dead = d.add_state(false);
  for (State c : {c0, c1}) {
    const long carry = c == c0 ? 0 : 1;
    for (Symbol s = 0; s < d.alphabet.size(); ++s) {
      const long next = static_cast<long>(base) * carry + d.alphabet.digit(s, 2) - d.alphabet.digit(s, 0) -
                        d.alphabet.digit(s, 1);
      d.set(c, s, next == 0 ? c0 : (next == 1 ? c1 : dead));
    }
  }
  return d;
}

Dfa rel_succ(System sys) {
  require_base(sys, "successor");
  sys = sys.as_msd();
  Dfa d = empty_shell(Alphabet({sys, sys}));
  // Discrepancy c = y - x on the prefixes; accept when it ends at exactly 1.
  const State c0 = d.add_state(false);
  const State c1 = d.add_state(true);
  const State dead = d.add_state(false);
  for (State c : {c0, c1}) {
    const long carry = c == c0 ? 0 : 1;
    for (Symbol s = 0; s < d.alphabet.size(); ++s) {
      const long next =
          static_cast<long>(sys.radix()) * carry + d.alphabet.digit(s, 1) - d.alphabet.digit(s, 0);
      d.set(c, s, next == 0 ? c0 : (next == 1 ? c1 : dead));
    }
  }
  return d;
}

Dfa rel_const(const BigInt& c, System sys) {
  sys = sys.as_msd();
  const auto word = numeration::to_digits(c, sys).digits;
  Dfa d = empty_shell(Alphabet({sys}));
  // State i = matched the first i digits of the canonical word (0 also absorbs padding).
  for (std::size_t i = 0; i <= word.size(); ++i) d.add_state(i == word.size());
  const State dead = d.add_state(false);
  for (std::size_t i = 0; i <= word.size(); ++i) {
    for (Symbol s = 0; s < d.alphabet.size(); ++s) {
      State to = dead;
      if (i < word.size() && s == word[i]) to = static_cast<State>(i + 1);
      if (i == 0 && s == 0) to = 0;
      d.set(static_cast<State>(i), s, to);
    }
  }
  return d;
}

// -------------------------------------------------------------- text format

void write_text(std::ostream& out, const TextAutomaton& t) {
  Alphabet alphabet(t.tracks);
  const State n = static_cast<State>(t.labels.size());
  out << "tracks:";
  for (const auto& sys : t.tracks) out << ' ' << sys.tag();
  out << '\n';
  std::vector<State> order{t.initial};
  for (State q = 0; q < n; ++q) {
    if (q != t.initial) order.push_back(q);
  }
  for (State q : order) out << "state " << q << ' ' << t.labels[q] << '\n';
  for (State q : order) {
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      out << q << ' ' << alphabet.format_symbol(s) << ' ' << t.delta[static_cast<std::size_t>(q) * alphabet.size() + s]
          << '\n';
    }
  }
}

TextAutomaton read_text(std::istream& in) {
  TextAutomaton t;
  std::string line;
  bool have_header = false;
  std::map<long, State> ids;
  std::vector<std::tuple<long, std::string, long>> edges;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error("automaton text, line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (!have_header) {
      if (head != "tracks:") fail("expected 'tracks:' header");
      std::string tag;
      while (ls >> tag) t.tracks.push_back(numeration::System::parse(tag));
      if (t.tracks.empty()) fail("no tracks declared");
      have_header = true;
    } else if (head == "state") {
      long id, label;
      if (!(ls >> id >> label)) fail("malformed state line");
      if (!ids.try_emplace(id, static_cast<State>(t.labels.size())).second) fail("duplicate state id");
      t.labels.push_back(label);
    } else {
      long from, to;
      std::string tuple;
      std::istringstream es(line);
      if (!(es >> from >> tuple >> to)) fail("malformed transition line");
      edges.emplace_back(from, tuple, to);
    }
  }
  if (!have_header) throw Error("automaton text: empty input");
  if (t.labels.empty()) throw Error("automaton text: no states");
  Alphabet alphabet(t.tracks);
  const Symbol k = alphabet.size();
  constexpr State unset = UINT32_MAX;
  t.delta.assign(t.labels.size() * k, unset);
  t.initial = 0;
  for (const auto& [from, tuple, to] : edges) {
    auto f = ids.find(from), g = ids.find(to);
    if (f == ids.end() || g == ids.end()) throw Error("automaton text: transition names unknown state");
    std::vector<std::uint8_t> digits;
    std::istringstream ds(tuple);
    std::string part;
    while (std::getline(ds, part, ',')) {
      try {
        digits.push_back(static_cast<std::uint8_t>(std::stoul(part)));
      } catch (const std::exception&) {
        throw Error("automaton text: bad digit tuple '" + tuple + "'");
      }
    }
    t.delta[static_cast<std::size_t>(f->second) * k + alphabet.encode(digits)] = g->second;
  }
  if (std::find(t.delta.begin(), t.delta.end(), unset) != t.delta.end()) {
    throw Error("automaton text: transition function is not total");
  }
  return t;
}

TextAutomaton to_text(const Dfa& a) {
  TextAutomaton t;
  t.tracks = a.alphabet.tracks();
  t.initial = a.initial;
  for (State q = 0; q < a.num_states(); ++q) t.labels.push_back(a.accepting[q] ? 1 : 0);
  t.delta = a.delta;
  return t;
}

Dfa from_text(const TextAutomaton& t) {
  Dfa d = empty_shell(Alphabet(t.tracks));
  d.initial = t.initial;
  for (long label : t.labels) {
    if (label != 0 && label != 1) throw Error("acceptor labels must be 0 or 1");
    d.accepting.push_back(label == 1);
  }
  d.delta = t.delta;
  return d;
}

std::string to_string(const Dfa& a) {
  std::ostringstream out;
  write_text(out, to_text(a));
  return out.str();
}

Dfa parse_dfa(const std::string& text) {
  std::istringstream in(text);
  return from_text(read_text(in));
}

}  // namespace syncsum::automata
