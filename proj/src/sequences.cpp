#include "syncsum/sequences.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <map>
#include <sstream>

#include "syncsum/embedded.hpp"

namespace syncsum::sequences {

using numeration::DigitOrder;
using numeration::System;

std::vector<int> Dfao::output_values() const {
  std::vector<bool> seen(num_states(), false);
  std::vector<State> stack{initial};
  std::vector<int> values;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    if (seen[q]) continue;
    seen[q] = true;
    values.push_back(output[q]);
    for (unsigned d = 0; d < system.radix(); ++d) stack.push_back(next(q, d));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

int eval(const Dfao& d, const BigInt& n) {
  const auto word = numeration::to_digits(n, d.system).digits;
  State q = d.initial;
  if (d.system.order() == DigitOrder::lsd) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) q = d.next(q, *it);
  } else {
    for (auto digit : word) q = d.next(q, digit);
  }
  return d.output[q];
}

int eval(const Dfao& d, std::uint64_t n) {
  if (d.system.is_fibonacci()) return eval(d, BigInt(static_cast<unsigned long>(n)));
  const unsigned k = d.system.radix();
  std::array<std::uint8_t, 64> digits{};
  std::size_t len = 0;
  for (; n > 0; n /= k) digits[len++] = static_cast<std::uint8_t>(n % k);
  State q = d.initial;
  if (d.system.order() == DigitOrder::lsd) {
    for (std::size_t i = 0; i < len; ++i) q = d.next(q, digits[i]);
  } else {
    for (std::size_t i = len; i-- > 0;) q = d.next(q, digits[i]);
  }
  return d.output[q];
}

namespace {

// A Moore machine viewed as a DFA whose acceptance flag is replaced by the output;
// minimization reuses the DFA code by splitting on outputs first.
Dfao canonical(const Dfao& d) {
  const unsigned k = d.system.radix();
  std::vector<State> id(d.num_states(), UINT32_MAX), order{d.initial};
  id[d.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (unsigned a = 0; a < k; ++a) {
      State t = d.next(order[i], a);
      if (id[t] == UINT32_MAX) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  Dfao out{d.system, 0, {}, {}};
  for (State q : order) {
    out.output.push_back(d.output[q]);
    for (unsigned a = 0; a < k; ++a) out.delta.push_back(id[d.next(q, a)]);
  }
  return out;
}

}  // namespace

Dfao minimize(const Dfao& input) {
  const Dfao d = canonical(input);
  const unsigned k = d.system.radix();
  const State n = d.num_states();
  std::vector<State> cls(n);
  {
    std::map<int, State> by_output;
    for (State q = 0; q < n; ++q) {
      cls[q] = by_output.try_emplace(d.output[q], static_cast<State>(by_output.size())).first->second;
    }
  }
  std::size_t count = 0;
  std::vector<State> sig(k + 1);
  while (true) {
    std::map<std::vector<State>, State> ids;
    std::vector<State> next_cls(n);
    for (State q = 0; q < n; ++q) {
      sig[0] = cls[q];
      for (unsigned a = 0; a < k; ++a) sig[a + 1] = cls[d.next(q, a)];
      next_cls[q] = ids.try_emplace(sig, static_cast<State>(ids.size())).first->second;
    }
    cls.swap(next_cls);
    if (ids.size() == count) break;
    count = ids.size();
  }
  Dfao q{d.system, cls[d.initial], std::vector<State>(count * k), std::vector<int>(count)};
  for (State s = 0; s < n; ++s) {
    q.output[cls[s]] = d.output[s];
    for (unsigned a = 0; a < k; ++a) q.delta[static_cast<std::size_t>(cls[s]) * k + a] = cls[d.next(s, a)];
  }
  return canonical(q);
}

bool isomorphic(const Dfao& a, const Dfao& b) {
  if (!(a.system == b.system)) return false;
  Dfao x = canonical(a), y = canonical(b);
  return x.output == y.output && x.delta == y.delta;
}

Dfao dfao_from_morphism(const Morphism& m, int start) {
  const std::size_t letters = m.images.size();
  if (letters == 0 || m.coding.size() != letters) throw Error("morphism needs one coding value per letter");
  if (start < 0 || static_cast<std::size_t>(start) >= letters) throw Error("start letter outside the alphabet");
  const std::size_t k = m.images[0].size();
  for (const auto& image : m.images) {
    if (image.size() != k) throw Error("morphism is not uniform");
    for (int b : image) {
      if (b < 0 || static_cast<std::size_t>(b) >= letters) throw Error("morphism image uses an unknown letter");
    }
  }
  if (m.images[start][0] != start) throw Error("morphism is not prolongable at the start letter");
  Dfao d{System::base(static_cast<unsigned>(k)), static_cast<State>(start), {}, m.coding};
  for (const auto& image : m.images) {
    for (int b : image) d.delta.push_back(static_cast<State>(b));
  }
  return d;
}

automata::Dfa acceptor(const Dfao& d, int value) {
  automata::Dfa dfa;
  dfa.alphabet = automata::Alphabet({d.system.as_msd()});
  dfa.initial = d.initial;
  for (State q = 0; q < d.num_states(); ++q) dfa.accepting.push_back(d.output[q] == value);
  dfa.delta = d.delta;
  if (d.system.order() == DigitOrder::lsd) dfa = automata::determinize(automata::reverse(dfa));
  if (d.system.is_fibonacci()) {
    dfa = automata::product(dfa, automata::valid_words(dfa.alphabet), automata::BoolOp::conjunction);
  }
  return automata::minimize(dfa);
}

Dfao msd_form(const Dfao& d) {
  if (d.system.order() == DigitOrder::msd) return d;
  const auto values = d.output_values();
  std::vector<automata::Dfa> parts;
  for (int v : values) parts.push_back(acceptor(d, v));
  const System sys = d.system.as_msd();
  const unsigned k = sys.radix();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> tuples;
  auto intern = [&](std::vector<State> t) {
    auto [it, fresh] = ids.try_emplace(t, static_cast<State>(tuples.size()));
    if (fresh) tuples.push_back(std::move(t));
    return it->second;
  };
  std::vector<State> start;
  for (const auto& p : parts) start.push_back(p.initial);
  intern(start);
  Dfao out{sys, 0, {}, {}};
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    int label = -1;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (parts[j].accepting[tuples[i][j]]) label = values[j];
    }
    out.output.push_back(label);
    for (unsigned a = 0; a < k; ++a) {
      std::vector<State> t(parts.size());
      for (std::size_t j = 0; j < parts.size(); ++j) t[j] = parts[j].next(tuples[i][j], a);
      out.delta.push_back(intern(std::move(t)));
    }
  }
  return minimize(out);
}

automata::TextAutomaton to_text(const Dfao& d) {
  automata::TextAutomaton t;
  t.tracks = {d.system};
  t.initial = d.initial;
  t.labels.assign(d.output.begin(), d.output.end());
  t.delta = d.delta;
  return t;
}

Dfao from_text(const automata::TextAutomaton& t) {
  if (t.tracks.size() != 1) throw Error("a DFAO has exactly one track");
  Dfao d{t.tracks[0], t.initial, t.delta, {}};
  for (long v : t.labels) d.output.push_back(static_cast<int>(v));
  return d;
}

std::string to_string(const Dfao& d) {
  std::ostringstream out;
  automata::write_text(out, to_text(d));
  return out.str();
}

Dfao parse_dfao(const std::string& text) {
  std::istringstream in(text);
  return sequences::from_text(automata::read_text(in));
}

// ------------------------------------------------------------------ catalog

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"T",  "CA", "sb", "ttm", "gbar", "pd", "mw",
                                              "pf", "le", "bs", "sc",  "rs",   "ftm"};
  return names;
}

std::string canonical_name(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string key = lower(name);
  for (const auto& n : catalog_names()) {
    if (lower(n) == key) return n;
  }
  std::string listing;
  for (const auto& n : catalog_names()) listing += " " + n;
  throw Error("unknown sequence '" + std::string(name) + "'; catalog:" + listing);
}

Dfao catalog(std::string_view name) {
  const std::string key = canonical_name(name);
  return parse_dfao(std::string(embedded_file("catalog/" + key + ".aut")));
}

bool is_binary(std::string_view name) { return canonical_name(name) != "le"; }

namespace {

std::vector<unsigned> base_digits(std::uint64_t n, unsigned k) {
  std::vector<unsigned> d;
  for (; n > 0; n /= k) d.push_back(static_cast<unsigned>(n % k));
  std::reverse(d.begin(), d.end());
  return d;
}

int count_digit(std::uint64_t n, unsigned k, unsigned digit) {
  int c = 0;
  for (auto d : base_digits(n, k)) c += d == digit;
  return c;
}

int period_doubling(std::uint64_t n) {
  if (n % 2 == 0) return 1;
  if (n % 4 == 1) return 0;
  return period_doubling((n - 3) / 4);
}

int paperfolding(std::uint64_t n) {
  if (n % 2 == 1) return paperfolding((n - 1) / 2);
  return n % 4 == 0 ? 0 : 1;
}

int stewart_choral(std::uint64_t n) {
  if (n % 3 == 0) return 0;
  if (n % 3 == 2) return 1;
  return stewart_choral((n - 1) / 3);
}

int rudin_shapiro(std::uint64_t n) {
  if (n < 2) return 0;
  if (n % 2 == 0) return rudin_shapiro(n / 2);
  if (n % 4 == 1) return rudin_shapiro((n - 1) / 4);
  return 1 - rudin_shapiro((n - 1) / 2);  // n = 4m+3 -> 1 - rs(2m+1)
}

int baum_sweet(std::uint64_t n) {
  int run = 0;
  for (auto d : base_digits(n, 2)) {
    if (d == 0) {
      ++run;
    } else {
      if (run % 2 == 1) return 0;
      run = 0;
    }
  }
  return run % 2 == 1 ? 0 : 1;
}

int legendre_parity(std::uint64_t n) {
  std::uint64_t v = 0;
  for (std::uint64_t p = 2; p <= n; p *= 2) {
    v += n / p;
    if (p > n / 2) break;
  }
  return static_cast<int>(v % 2);
}

int fibonacci_thue_morse(std::uint64_t n) {
  std::vector<std::uint64_t> fib{1, 2};
  while (fib.back() <= n) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  int ones = 0;
  for (auto it = fib.rbegin(); it != fib.rend(); ++it) {
    if (*it <= n) {
      n -= *it;
      ++ones;
    }
  }
  return ones % 2;
}

const std::array<std::array<int, 13>, 3> kLeechImages{{
    {0, 1, 2, 1, 0, 2, 1, 2, 0, 1, 2, 1, 0},
    {1, 2, 0, 2, 1, 0, 2, 0, 1, 2, 0, 2, 1},
    {2, 0, 1, 0, 2, 1, 0, 1, 2, 0, 1, 0, 2},
}};

// The fixed point satisfies le(13m + j) = image(le(m))[j].
int leech(std::uint64_t n) {
  if (n == 0) return 0;
  return kLeechImages[leech(n / 13)][n % 13];
}

int second_bit(std::uint64_t n) {
  auto d = base_digits(n, 2);
  return d.size() < 2 ? 0 : static_cast<int>(d[1]);
}

int twisted_thue_morse(std::uint64_t n) { return n == 0 ? 0 : count_digit(n, 2, 0) % 2; }

int cantor(std::uint64_t n) { return count_digit(n, 3, 1) == 0 ? 1 : 0; }

}  // namespace

namespace {

using OracleFn = int (*)(std::uint64_t);

int thue_morse(std::uint64_t n) { return std::popcount(n) % 2; }
int mephisto_waltz(std::uint64_t n) { return count_digit(n, 3, 2) % 2; }

OracleFn oracle_fn(std::string_view name) {
  static const std::map<std::string, OracleFn> table{
      {"T", thue_morse},       {"CA", cantor},        {"sb", second_bit},        {"ttm", twisted_thue_morse},
      {"gbar", legendre_parity}, {"pd", period_doubling}, {"mw", mephisto_waltz}, {"pf", paperfolding},
      {"le", leech},           {"bs", baum_sweet},    {"sc", stewart_choral},    {"rs", rudin_shapiro},
      {"ftm", fibonacci_thue_morse},
  };
  return table.at(canonical_name(name));
}

}  // namespace

int oracle(std::string_view name, std::uint64_t n) { return oracle_fn(name)(n); }

std::uint64_t running_sum_oracle(std::string_view name, std::uint64_t n) {
  const OracleFn f = oracle_fn(name);
  std::uint64_t s = 0;
  for (std::uint64_t i = 0; i <= n; ++i) s += static_cast<std::uint64_t>(f(i));
  return s;
}

std::vector<std::uint64_t> running_sums(std::string_view name, std::uint64_t n) {
  const OracleFn f = oracle_fn(name);
  std::vector<std::uint64_t> out;
  out.reserve(n + 1);
  std::uint64_t s = 0;
  for (std::uint64_t i = 0; i <= n; ++i) {
    s += static_cast<std::uint64_t>(f(i));
    out.push_back(s);
  }
  return out;
}

}  // namespace syncsum::sequences
