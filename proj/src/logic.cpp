#include "syncsum/logic.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace syncsum::logic {

using automata::Alphabet;
using automata::BoolOp;
using automata::Dfa;
using numeration::System;

namespace {

FormulaPtr atom(std::string text, std::vector<std::string> free, std::function<bool(const std::vector<BigInt>&)> fn) {
  auto f = std::make_shared<Formula>();
  f->text = std::move(text);
  f->free = std::move(free);
  f->holds = std::move(fn);
  return f;
}

FormulaPtr node(Formula::Kind kind, std::vector<FormulaPtr> args, std::string variable = {}) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->args = std::move(args);
  f->variable = std::move(variable);
  return f;
}

Alphabet alphabet_of(const std::vector<Track>& tracks) {
  std::vector<System> systems;
  for (const auto& t : tracks) systems.push_back(t.system);
  return Alphabet(std::move(systems));
}

Dfa normalize(const Dfa& a) { return automata::minimize(automata::product(a, automata::valid_words(a.alphabet), BoolOp::conjunction)); }

std::function<bool(const std::vector<BigInt>&)> membership(const Dfa& dfa) {
  return [dfa](const std::vector<BigInt>& values) { return dfa.accepts(dfa.alphabet.encode_values(values)); };
}

std::vector<Track> two_tracks(const std::string& x, const std::string& y, System sys) {
  if (x == y) throw Error("relation needs two distinct track names");
  return {{x, sys}, {y, sys}};
}

// Same automaton with the tracks renamed positionally.
Predicate with_names(const Predicate& p, const std::vector<std::string>& names) {
  if (names.size() != p.arity()) throw Error("expected a predicate with " + std::to_string(names.size()) + " tracks");
  std::vector<Track> tracks = p.tracks();
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::rename;
  f->args = {p.formula()};
  for (std::size_t i = 0; i < names.size(); ++i) {
    f->renames[names[i]] = tracks[i].name;
    tracks[i].name = names[i];
  }
  return Predicate(std::move(tracks), p.dfa(), f);
}

std::vector<Track> merged_tracks(const Predicate& a, const Predicate& b) {
  std::vector<Track> out = a.tracks();
  for (const auto& t : b.tracks()) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Track& u) { return u.name == t.name; });
    if (it == out.end()) {
      out.push_back(t);
    } else if (!(it->system == t.system)) {
      throw Error("track '" + t.name + "' used with systems " + it->system.tag() + " and " + t.system.tag());
    }
  }
  return out;
}

Dfa lift_to(const Predicate& p, const std::vector<Track>& tracks) {
  std::vector<std::size_t> map;
  for (const auto& t : p.tracks()) {
    auto it = std::find_if(tracks.begin(), tracks.end(), [&](const Track& u) { return u.name == t.name; });
    map.push_back(static_cast<std::size_t>(it - tracks.begin()));
  }
  return automata::cylindrify(p.dfa(), alphabet_of(tracks), map);
}

Predicate combine(const Predicate& a, const Predicate& b, BoolOp op) {
  auto tracks = merged_tracks(a, b);
  Dfa dfa = normalize(automata::product(lift_to(a, tracks), lift_to(b, tracks), op));
  auto kind = op == BoolOp::conjunction ? Formula::Kind::conj : Formula::Kind::disj;
  return Predicate(std::move(tracks), std::move(dfa), node(kind, {a.formula(), b.formula()}));
}

BigInt value_at(const Assignment& values, const std::string& name) {
  auto it = values.find(name);
  if (it == values.end()) throw Error("no value for variable '" + name + "'");
  return it->second;
}

int dfao_value(const sequences::Dfao& d, const BigInt& n) { return sequences::eval(d, n); }

using Clock = std::chrono::steady_clock;
double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

void require_pair(const Predicate& p, const char* query) {
  if (p.arity() != 2) throw Error(std::string(query) + " needs a predicate with exactly two tracks (n, s)");
}

}  // namespace

// ----------------------------------------------------------------- formulas

bool evaluate(const Formula& f, const Assignment& values, unsigned long bound) {
  switch (f.kind) {
    case Formula::Kind::atom: {
      std::vector<BigInt> args;
      for (const auto& name : f.free) args.push_back(value_at(values, name));
      return f.holds(args);
    }
    case Formula::Kind::conj:
      return evaluate(*f.args[0], values, bound) && evaluate(*f.args[1], values, bound);
    case Formula::Kind::disj:
      return evaluate(*f.args[0], values, bound) || evaluate(*f.args[1], values, bound);
    case Formula::Kind::neg:
      return !evaluate(*f.args[0], values, bound);
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      const bool want = f.kind == Formula::Kind::exists;
      Assignment inner = values;
      for (unsigned long v = 0; v <= bound; ++v) {
        inner[f.variable] = v;
        if (evaluate(*f.args[0], inner, bound) == want) return want;
      }
      return !want;
    }
    case Formula::Kind::rename: {
      Assignment inner = values;
      for (const auto& [to, from] : f.renames) inner.erase(to);
      for (const auto& [to, from] : f.renames) inner[from] = value_at(values, to);
      return evaluate(*f.args[0], inner, bound);
    }
  }
  return false;
}

std::string describe(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return f.text;
    case Formula::Kind::conj:
      return "(" + describe(*f.args[0]) + " & " + describe(*f.args[1]) + ")";
    case Formula::Kind::disj:
      return "(" + describe(*f.args[0]) + " | " + describe(*f.args[1]) + ")";
    case Formula::Kind::neg:
      return "~" + describe(*f.args[0]);
    case Formula::Kind::exists:
      return "E" + f.variable + " " + describe(*f.args[0]);
    case Formula::Kind::forall:
      return "A" + f.variable + " " + describe(*f.args[0]);
    case Formula::Kind::rename: {
      std::string out = describe(*f.args[0]) + "[";
      bool first = true;
      for (const auto& [to, from] : f.renames) {
        if (to == from) continue;
        out += (first ? "" : ", ") + from + ":=" + to;
        first = false;
      }
      return first ? describe(*f.args[0]) : out + "]";
    }
  }
  return {};
}

// ---------------------------------------------------------------- Predicate

Predicate::Predicate(std::vector<Track> tracks, Dfa dfa, FormulaPtr formula)
    : tracks_(std::move(tracks)), dfa_(std::move(dfa)), formula_(std::move(formula)) {
  std::set<std::string> seen;
  for (const auto& t : tracks_) {
    if (t.name.empty()) throw Error("track names must be non-empty");
    if (!seen.insert(t.name).second) throw Error("duplicate track name '" + t.name + "'");
  }
  if (!(dfa_.alphabet == alphabet_of(tracks_))) throw Error("track systems do not match the automaton's alphabet");
  if (!formula_) formula_ = atom("rel", names(), membership(dfa_));
}

std::size_t Predicate::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (tracks_[i].name == name) return i;
  }
  throw Error("predicate has no track '" + std::string(name) + "'");
}

std::vector<std::string> Predicate::names() const {
  std::vector<std::string> out;
  for (const auto& t : tracks_) out.push_back(t.name);
  return out;
}

bool Predicate::accepts(std::span<const BigInt> values) const {
  if (values.size() != arity()) throw Error("wrong number of values for predicate");
  return dfa_.accepts(dfa_.alphabet.encode_values(values));
}

bool Predicate::accepts(const Assignment& values) const {
  std::vector<BigInt> v;
  for (const auto& t : tracks_) v.push_back(value_at(values, t.name));
  return accepts(v);
}

std::optional<std::vector<BigInt>> Predicate::witness() const {
  auto w = automata::find_accepted(dfa_);
  if (!w) return std::nullopt;
  return dfa_.alphabet.decode_values(*w);
}

// -------------------------------------------------------------------- atoms

Predicate lift(const sequences::Dfao& d, int value, std::string name) {
  Dfa a = automata::minimize(sequences::acceptor(d, value));
  std::string text = "d(" + name + ")=" + std::to_string(value);
  auto f = atom(text, {name}, [d, value](const std::vector<BigInt>& v) { return dfao_value(d, v[0]) == value; });
  return Predicate({{std::move(name), d.system.as_msd()}}, std::move(a), f);
}

Predicate lift(std::string_view sequence, int value, std::string name) {
  const std::string seq = sequences::canonical_name(sequence);
  const auto d = sequences::catalog(seq);
  Dfa a = automata::minimize(sequences::acceptor(d, value));
  std::string text = seq + "(" + name + ")=" + std::to_string(value);
  auto f = atom(text, {name}, [seq, d, value](const std::vector<BigInt>& v) {
    if (v[0].fits_ulong_p()) return sequences::oracle(seq, v[0].get_ui()) == value;
    return dfao_value(d, v[0]) == value;
  });
  return Predicate({{std::move(name), d.system.as_msd()}}, std::move(a), f);
}

Predicate from_rel(const Dfa& r, std::vector<Track> tracks, std::string text,
                   std::function<bool(const std::vector<BigInt>&)> semantics) {
  if (!(r.alphabet == alphabet_of(tracks))) throw Error("track systems do not match the relation's alphabet");
  Dfa dfa = normalize(automata::saturate_padding(r));
  std::vector<std::string> free;
  for (const auto& t : tracks) free.push_back(t.name);
  if (!semantics) semantics = membership(dfa);
  auto f = atom(text + "(" + [&] {
    std::string s;
    for (std::size_t i = 0; i < free.size(); ++i) s += (i ? "," : "") + free[i];
    return s;
  }() + ")", free, std::move(semantics));
  return Predicate(std::move(tracks), std::move(dfa), f);
}

Predicate eq(const std::string& x, const std::string& y, System sys) {
  auto f = atom(x + "=" + y, {x, y}, [](const std::vector<BigInt>& v) { return v[0] == v[1]; });
  return Predicate(two_tracks(x, y, sys), automata::minimize(automata::rel_eq(sys)), f);
}

Predicate lt(const std::string& x, const std::string& y, System sys) {
  auto f = atom(x + "<" + y, {x, y}, [](const std::vector<BigInt>& v) { return v[0] < v[1]; });
  return Predicate(two_tracks(x, y, sys), automata::minimize(automata::rel_lt(sys)), f);
}

Predicate leq(const std::string& x, const std::string& y, System sys) {
  auto f = atom(x + "<=" + y, {x, y}, [](const std::vector<BigInt>& v) { return v[0] <= v[1]; });
  return Predicate(two_tracks(x, y, sys), automata::minimize(automata::rel_leq(sys)), f);
}

Predicate succ(const std::string& x, const std::string& y, System sys) {
  auto f = atom(y + "=" + x + "+1", {x, y}, [](const std::vector<BigInt>& v) { return v[1] == v[0] + 1; });
  return Predicate(two_tracks(x, y, sys), automata::minimize(automata::rel_succ(sys)), f);
}

Predicate add(const std::string& x, const std::string& y, const std::string& z, System sys) {
  if (sys.is_fibonacci()) throw Error("unsupported: no Fibonacci adder");
  if (x == y || y == z || x == z) throw Error("addition needs three distinct track names");
  auto f = atom(x + "+" + y + "=" + z, {x, y, z}, [](const std::vector<BigInt>& v) { return v[0] + v[1] == v[2]; });
  return Predicate({{x, sys}, {y, sys}, {z, sys}}, automata::minimize(automata::rel_add(sys.radix())), f);
}

Predicate constant(const std::string& x, const BigInt& c, System sys) {
  auto f = atom(x + "=" + c.get_str(), {x}, [c](const std::vector<BigInt>& v) { return v[0] == c; });
  return Predicate({{x, sys}}, automata::minimize(automata::rel_const(c, sys)), f);
}

// --------------------------------------------------------------- connectives

Predicate p_and(const Predicate& a, const Predicate& b) { return combine(a, b, BoolOp::conjunction); }

Predicate p_or(const Predicate& a, const Predicate& b) { return combine(a, b, BoolOp::disjunction); }

Predicate p_not(const Predicate& p) {
  return Predicate(p.tracks(), normalize(automata::complement(p.dfa())), node(Formula::Kind::neg, {p.formula()}));
}

Predicate p_exists(const Predicate& p, std::string_view track) {
  const std::size_t i = p.index_of(track);
  auto tracks = p.tracks();
  tracks.erase(tracks.begin() + static_cast<std::ptrdiff_t>(i));
  Dfa dfa = automata::minimize(automata::saturate_padding(automata::project_away(p.dfa(), i)));
  return Predicate(std::move(tracks), std::move(dfa), node(Formula::Kind::exists, {p.formula()}, std::string(track)));
}

Predicate p_forall(const Predicate& p, std::string_view track) {
  Predicate q = p_not(p_exists(p_not(p), track));
  return Predicate(q.tracks(), q.dfa(), node(Formula::Kind::forall, {p.formula()}, std::string(track)));
}

Predicate rename(const Predicate& p, std::string_view from, std::string to) {
  auto names = p.names();
  names[p.index_of(from)] = std::move(to);
  return with_names(p, names);
}

Predicate reorder(const Predicate& p, const std::vector<std::string>& order) {
  if (order.size() != p.arity()) throw Error("reorder needs a permutation of the track names");
  std::vector<Track> tracks;
  for (const auto& name : order) tracks.push_back(p.tracks()[p.index_of(name)]);
  Dfa dfa = automata::minimize(lift_to(p, tracks));
  return Predicate(std::move(tracks), std::move(dfa), p.formula());
}

bool equivalent(const Predicate& a, const Predicate& b) {
  if (a.arity() != b.arity()) return false;
  for (const auto& t : a.tracks()) {
    auto names = b.names();
    auto it = std::find(names.begin(), names.end(), t.name);
    if (it == names.end() || !(b.tracks()[static_cast<std::size_t>(it - names.begin())].system == t.system)) return false;
  }
  return automata::equivalent(a.dfa(), reorder(b, a.names()).dfa());
}

// -------------------------------------------------------------- verification

VerificationReport verify_functional(const Predicate& p) {
  require_pair(p, "verify_functional");
  const auto start = Clock::now();
  const System s_sys = p.tracks()[1].system;
  Predicate first = with_names(p, {"n", "s"});
  Predicate second = with_names(p, {"n", "t"});
  Predicate query = p_and(p_and(first, second), p_not(eq("s", "t", s_sys)));
  query = reorder(query, {"n", "s", "t"});
  VerificationReport r;
  r.query = "functional: An,s,t p(n,s) & p(n,t) => s=t";
  r.counterexample = query.witness();
  r.verdict = !r.counterexample;
  if (!r.verdict) {
    const auto& c = *r.counterexample;
    r.detail = "p accepts (" + c[0].get_str() + ", " + c[1].get_str() + ") and (" + c[0].get_str() + ", " +
               c[2].get_str() + ")";
  }
  r.state_counts = {{"predicate", p.dfa().num_states()}, {"query", query.dfa().num_states()}};
  r.seconds = since(start);
  return r;
}

VerificationReport verify_total(const Predicate& p) {
  require_pair(p, "verify_total");
  const auto start = Clock::now();
  Predicate named = with_names(p, {"n", "s"});
  Predicate query = p_not(p_exists(named, "s"));
  VerificationReport r;
  r.query = "total: An Es p(n,s)";
  r.counterexample = query.witness();
  r.verdict = !r.counterexample;
  if (!r.verdict) r.detail = "no s with p(" + (*r.counterexample)[0].get_str() + ", s)";
  r.state_counts = {{"predicate", p.dfa().num_states()}, {"query", query.dfa().num_states()}};
  r.seconds = since(start);
  return r;
}

VerificationReport verify_inductive(const Predicate& p, const sequences::Dfao& d) {
  require_pair(p, "verify_inductive");
  const System n_sys = p.tracks()[0].system;
  const System s_sys = p.tracks()[1].system;
  if (n_sys.is_fibonacci() || s_sys.is_fibonacci()) {
    throw Error("unsupported: no Fibonacci adder, inductive verification needs base-k tracks");
  }
  if (!(d.system.as_msd() == n_sys)) throw Error("sequence system differs from the predicate's n track");
  const auto outputs = d.output_values();
  for (int u : outputs) {
    if (u != 0 && u != 1) throw Error("inductive verification needs a 0/1 sequence");
  }
  const auto start = Clock::now();
  VerificationReport r;
  r.query = "inductive: p(0,d(0)) & An,s,u (p(n,s) & d(n+1)=u) => p(n+1,s+u)";
  r.state_counts = {{"predicate", p.dfa().num_states()}};
  const int d0 = sequences::eval(d, std::uint64_t{0});
  const std::vector<BigInt> base{BigInt(0), BigInt(d0)};
  if (!p.accepts(base)) {
    r.verdict = false;
    r.counterexample = std::vector<BigInt>{0, d0, d0};
    r.detail = "base case: p(0, " + std::to_string(d0) + ") is false";
    r.seconds = since(start);
    return r;
  }
  Predicate here = with_names(p, {"n", "s"});
  Predicate step = p_and(here, succ("n", "m", n_sys));
  std::optional<std::vector<BigInt>> best;
  int best_u = 0;
  for (int u : {0, 1}) {
    if (std::find(outputs.begin(), outputs.end(), u) == outputs.end()) continue;
    Predicate query = p_and(step, lift(d, u, "m"));
    if (u == 0) {
      query = p_and(query, p_not(with_names(p, {"m", "s"})));
    } else {
      query = p_and(p_and(query, succ("s", "t", s_sys)), p_not(with_names(p, {"m", "t"})));
    }
    query = reorder(query, [&] {
      std::vector<std::string> order{"n", "s", "m"};
      if (u == 1) order.push_back("t");
      return order;
    }());
    r.state_counts.emplace_back("query u=" + std::to_string(u), query.dfa().num_states());
    auto w = query.witness();
    if (w && (!best || (*w)[0] < (*best)[0])) {
      best = std::vector<BigInt>{(*w)[0], (*w)[1], u};
      best_u = u;
    }
  }
  r.verdict = !best;
  if (best) {
    r.counterexample = best;
    const auto& c = *best;
    BigInt next_n = c[0] + 1, next_s = c[1] + best_u;
    r.detail = "p(" + c[0].get_str() + ", " + c[1].get_str() + ") and d(" + next_n.get_str() + ")=" +
               std::to_string(best_u) + " but not p(" + next_n.get_str() + ", " + next_s.get_str() + ")";
  }
  r.seconds = since(start);
  return r;
}

// ---------------------------------------------------------- sum <-> index

Predicate index_from_sum(const Predicate& b, const sequences::Dfao& d) {
  require_pair(b, "index_from_sum");
  for (const auto& report : {verify_functional(b), verify_total(b)}) {
    if (!report.verdict) throw Error("index_from_sum: sum predicate fails " + report.query + " (" + report.detail + ")");
  }
  const System s_sys = b.tracks()[1].system;
  Predicate sums = with_names(b, {"k", "s"});
  Predicate body = p_and(p_and(sums, succ("n", "s", s_sys)), lift(d, 1, "k"));
  return reorder(p_exists(body, "s"), {"n", "k"});
}

Predicate sum_from_index(const Predicate& a, const sequences::Dfao& d) {
  require_pair(a, "sum_from_index");
  const System s_sys = a.tracks()[0].system;
  const System k_sys = a.tracks()[1].system;
  Predicate index = with_names(a, {"p", "r"});
  // No one strictly after r up to n.
  Predicate gap = p_not(p_exists(p_and(p_and(lt("r", "i", k_sys), leq("i", "n", k_sys)), lift(d, 1, "i")), "i"));
  Predicate last = p_and(p_and(p_and(leq("r", "n", k_sys), succ("p", "s", s_sys)), index), gap);
  Predicate counted = p_exists(p_exists(last, "p"), "r");
  // No one at all up to n: the sum is still zero.
  Predicate none = p_not(p_exists(p_and(leq("i", "n", k_sys), lift(d, 1, "i")), "i"));
  Predicate before_first = p_and(constant("s", 0, s_sys), none);
  return reorder(p_or(counted, before_first), {"n", "s"});
}

// ------------------------------------------------------------------ text I/O

std::string to_text(const Predicate& p) {
  std::string out = "# names:";
  for (const auto& t : p.tracks()) out += " " + t.name;
  return out + "\n" + automata::to_string(p.dfa());
}

Predicate parse_predicate(const std::string& text) {
  Dfa dfa = automata::parse_dfa(text);
  std::vector<std::string> names;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# names:", 0) == 0) {
      std::istringstream fields(line.substr(8));
      std::string name;
      while (fields >> name) names.push_back(name);
    }
  }
  const auto& systems = dfa.alphabet.tracks();
  if (names.empty()) {
    const char* defaults[] = {"n", "s", "t", "u", "v", "w"};
    for (std::size_t i = 0; i < systems.size(); ++i) {
      names.push_back(i < 6 ? defaults[i] : "x" + std::to_string(i));
    }
  }
  if (names.size() != systems.size()) throw Error("'# names:' line lists the wrong number of tracks");
  std::vector<Track> tracks;
  for (std::size_t i = 0; i < names.size(); ++i) tracks.push_back({names[i], systems[i]});
  return from_rel(dfa, std::move(tracks), "file");
}

}  // namespace syncsum::logic
