#include "syncsum/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "syncsum/analysis.hpp"
#include "syncsum/learn.hpp"

namespace syncsum::reproduce {

namespace {

using analysis::Polynomial;
using numeration::System;

struct Context {
  const Options& options;
  std::map<std::string, logic::Predicate> learned;
};

using Group = std::function<void(Context&, std::vector<Row>&)>;

// Times `body` and appends its row.
void row(std::vector<Row>& rows, std::string group, std::string id, std::string claim,
         const std::function<bool(std::string&)>& body) {
  Row r{std::move(group), std::move(id), std::move(claim), false, {}, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rows.push_back(std::move(r));
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "; ") + l;
  return out;
}

const logic::Predicate& learned(Context& ctx, const std::string& seq) {
  auto it = ctx.learned.find(seq);
  if (it != ctx.learned.end()) return it->second;
  auto oracle = learn::MembershipOracle::for_sequence(seq);
  learn::LearnOptions lo;
  lo.max_states = ctx.options.max_states;
  lo.test_len = ctx.options.test_len;
  lo.seed = ctx.options.seed;
  auto result = learn::learn_sync(oracle, lo);
  if (result.outcome != learn::Outcome::proved) {
    throw Error("learning " + seq + " ended with outcome " + learn::to_string(result.outcome));
  }
  return ctx.learned.emplace(seq, *result.predicate).first->second;
}

void group_eval(Context&, std::vector<Row>& rows) {
  for (const auto& name : sequences::catalog_names()) {
    row(rows, "eval", name, "DFAO output equals the definition for n < 10^5", [&](std::string& detail) {
      const auto d = sequences::catalog(name);
      for (std::uint64_t n = 0; n < 100000; ++n) {
        if (sequences::eval(d, n) != sequences::oracle(name, n)) {
          detail = "differs at n=" + std::to_string(n);
          return false;
        }
      }
      detail = std::to_string(d.num_states()) + " states";
      return true;
    });
  }
}

void group_linrep(Context&, std::vector<Row>& rows) {
  for (const auto& name : sequences::catalog_names()) {
    row(rows, "linrep", name, "derived running-sum representation equals the scan for n <= 2^14",
        [&](std::string& detail) {
          const auto lr = linrep::derive_running_sum_linrep(sequences::catalog(name));
          const auto sums = sequences::running_sums(name, 1u << 14);
          for (std::uint64_t n = 0; n < sums.size(); ++n) {
            if (linrep::eval_linrep(lr, n) != sums[n]) {
              detail = "differs at n=" + std::to_string(n);
              return false;
            }
          }
          detail = "dimension " + std::to_string(lr.dimension());
          return true;
        });
  }
}

void group_sum_index(Context& ctx, std::vector<Row>& rows) {
  row(rows, "sum-index", "sum_T", "sum_T(0..9) = 0 1 2 2 3 3 3 4 5 5", [&](std::string& detail) {
    const auto& b = learned(ctx, "T");
    const auto lr = linrep::derive_running_sum_linrep(sequences::catalog("T"));
    const int expected[] = {0, 1, 2, 2, 3, 3, 3, 4, 5, 5};
    for (int n = 0; n < 10; ++n) {
      const BigInt values[] = {n, expected[n]};
      if (!b.accepts(values) || linrep::eval_linrep(lr, n) != expected[n]) {
        detail = "differs at n=" + std::to_string(n);
        return false;
      }
      detail += (n ? " " : "") + std::to_string(expected[n]);
    }
    return true;
  });
  row(rows, "sum-index", "ind_T", "positions of the first nine ones of T are 1 2 4 7 8 11 13 14 16",
      [&](std::string& detail) {
        const auto a = logic::index_from_sum(learned(ctx, "T"), sequences::catalog("T"));
        const int expected[] = {1, 2, 4, 7, 8, 11, 13, 14, 16};
        for (int i = 0; i < 9; ++i) {
          for (int k = 0; k <= 20; ++k) {
            const BigInt values[] = {i, k};
            if (a.accepts(values) != (k == expected[i])) {
              detail = "wrong verdict at (" + std::to_string(i) + ", " + std::to_string(k) + ")";
              return false;
            }
          }
          detail += (i ? " " : "") + std::to_string(expected[i]);
        }
        return true;
      });
  row(rows, "sum-index", "round-trip", "index_from_sum after sum_from_index is the identity on T's index automaton",
      [&](std::string& detail) {
        const auto t = sequences::catalog("T");
        const auto a = logic::index_from_sum(learned(ctx, "T"), t);
        const auto b = logic::sum_from_index(a, t);
        detail = std::to_string(a.dfa().num_states()) + " and " + std::to_string(b.dfa().num_states()) + " states";
        return logic::equivalent(logic::index_from_sum(b, t), a) && logic::equivalent(b, learned(ctx, "T"));
      });
}

void group_sync(Context& ctx, std::vector<Row>& rows) {
  const std::pair<const char*, const char*> sums[] = {
      {"T", "tmsum"}, {"CA", "cansum"}, {"sb", "sbsum"}, {"ttm", "ttmsum"}, {"gbar", "gbar-sum"}};
  for (const auto& [seq, label] : sums) {
    row(rows, "sync", label, std::string("running sum of ") + seq + " is synchronised (functional, total, inductive)",
        [&](std::string& detail) {
          auto oracle = learn::MembershipOracle::for_sequence(seq);
          learn::LearnOptions lo;
          lo.max_states = ctx.options.max_states;
          lo.test_len = ctx.options.test_len;
          lo.seed = ctx.options.seed;
          const auto result = learn::learn_sync(oracle, lo);
          detail = learn::to_string(result.outcome) + ", " + std::to_string(result.stats.states) + " states";
          for (const auto& rep : result.reports) detail += ", " + rep.query + " " + (rep.verdict ? "TRUE" : "FALSE");
          if (result.outcome != learn::Outcome::proved || result.reports.size() != 3) return false;
          ctx.learned.emplace(seq, *result.predicate);
          for (const auto& rep : result.reports) {
            if (!rep.verdict) return false;
          }
          return true;
        });
  }
}

struct Affine {
  const char* seq;
  const char* fixture;
  const char* pattern;
  System sys;
  const char* minpoly;
  BigRat a, b, c, lambda;  // value closed form
  BigRat alpha, delta;     // residual
  const char* formula;
};

const Affine kAffine[] = {
    {"pd", "pd", "(10)^r 1", System::base(2), "x^4 - 6x^3 + 9x^2 - 4x", BigRat(1, 9), BigRat(1, 3), BigRat(8, 9), 4,
     BigRat(2, 3), 0, "(2*4^(r+1) + 3r + 1)/9"},
    {"mw", "mw", "(11)^r", System::base(3), "x^3 - 11x^2 + 19x - 9", BigRat(-1, 4), -1, BigRat(1, 4), 9,
     BigRat(1, 2), 0, "n/2 - r"},
    {"pf", "pf", "(10)^r 1", System::base(2), "x^4 - 6x^3 + 9x^2 - 4x", BigRat(1, 3), -1, BigRat(2, 3), 4,
     BigRat(1, 2), BigRat(1, 2), "(n+1)/2 - r"},
    {"sc", "sc", "(1)^r", System::base(3), "x^3 - 5x^2 + 7x - 3", BigRat(-1, 4), BigRat(-1, 2), BigRat(1, 4), 3,
     BigRat(1, 2), 0, "(3^r - 2r - 1)/4"},
};

// Matrix whose minimal polynomial the group checks.
analysis::Matrix minpoly_block(const Affine& c) {
  const auto lr = linrep::reference_linrep(c.fixture);
  const std::string s = c.seq;
  if (s == "pd" || s == "pf") return lr.matrix(1) * lr.matrix(0);
  if (s == "mw") return lr.matrix(1) * lr.matrix(1);
  return lr.matrix(1);
}

void certificate_row(std::vector<Row>& rows, const std::string& group, const std::string& seq, const char* pattern,
                     System sys, const BigRat& alpha, const BigRat& delta) {
  row(rows, group, "certificate",
      "residual |" + format_rational(alpha) + "*n + " + format_rational(delta) + " - sum_" + seq + "(n)| along " +
          pattern + " grows linearly, so the running sum is not synchronised",
      [&](std::string& detail) {
        const auto cert = analysis::nonsync_certificate(seq, numeration::parse_pattern(pattern, sys), alpha, delta, 1);
        detail = "A = " + format_rational(cert.A) + ", B = " + format_rational(cert.B) + " for r >= " +
                 std::to_string(cert.from) + ", recurrence degree " + std::to_string(cert.degree);
        return cert.valid && cert.B != 0 && !cert.narrative.empty();
      });
}

void affine_group(const Affine& c, std::vector<Row>& rows) {
  const std::string g = c.seq;
  row(rows, g, "minpoly", std::string("minimal polynomial is ") + c.minpoly, [&](std::string& detail) {
    const auto p = analysis::minimal_polynomial(minpoly_block(c));
    detail = p.to_string();
    return detail == c.minpoly;
  });
  row(rows, g, "closed-form", std::string("sum_") + c.seq + "(n) = " + c.formula + " along " + c.pattern,
      [&](std::string& detail) {
        const auto pat = numeration::parse_pattern(c.pattern, c.sys);
        const auto form = linrep::pattern_matrix(linrep::reference_linrep(c.fixture), pat);
        const auto cf = analysis::affine_plus_geometric(c.a, c.b, c.c, c.lambda);
        const auto check = analysis::verify_closed_form(form, cf, analysis::minimal_polynomial(form.block));
        detail = "proved for r >= " + std::to_string(check.from) + " from " + std::to_string(check.degree + 1) +
                 " values";
        for (std::size_t r = 0; r < check.from; ++r) {
          detail += "; r=" + std::to_string(r) + " gives " + linrep::pattern_values(linrep::reference_linrep(c.fixture), pat, r).get_str() +
                    " against " + format_rational(cf(r));
        }
        if (!check.verified) detail = check.failure;
        return check.verified;
      });
  certificate_row(rows, g, c.seq, c.pattern, c.sys, c.alpha, c.delta);
}

void group_le(Context&, std::vector<Row>& rows) {
  row(rows, "le", "minpoly", "digit-1 matrix has minimal polynomial x^6 - 12x^5 - 12x^4 - 14x^3 + 12x^2 + 12x + 13",
      [](std::string& detail) {
        detail = analysis::minimal_polynomial(linrep::reference_linrep("le1").matrix(1)).to_string();
        return detail == "x^6 - 12x^5 - 12x^4 - 14x^3 + 12x^2 + 12x + 13";
      });
  row(rows, "le", "closed-form", "sum_le((13^(3r) - 1)/12) = n + 3r and the values 1 16 186 2377 30943 402240",
      [](std::string& detail) {
        const auto f = analysis::verify_integer_formula("le_pattern");
        detail = join(f.transcript);
        return f.verified;
      });
  certificate_row(rows, "le", "le", "(1_1_1)^r", System::base(13), 1, 0);
}

void group_bs(Context& ctx, std::vector<Row>& rows) {
  row(rows, "bs", "annihilator", "(x^2 - x - 1)(x^2 - 1) annihilates the digit-0 matrix", [](std::string& detail) {
    const auto q = Polynomial::from_integers({-1, -1, 1}) * Polynomial::from_integers({-1, 0, 1});
    detail = q.to_string();
    return q(linrep::reference_linrep("bs").matrix(0)).is_zero();
  });
  row(rows, "bs", "closed-form", "sum_bs(2^k) follows the golden-ratio closed form; sum_bs(4) = 4", [](std::string& detail) {
    const auto f = analysis::verify_integer_formula("bs_pow2");
    detail = join(f.transcript);
    return f.verified;
  });
  row(rows, "bs", "divergence", "the learner finds no synchronised automaton within the state budget",
      [&](std::string& detail) {
        const auto c = analysis::divergence_certificate("bs", ctx.options.max_states, ctx.options.seed);
        detail = c.transcript.empty() ? c.method : c.transcript.back();
        return c.valid;
      });
}

void group_rs(Context& ctx, std::vector<Row>& rows) {
  row(rows, "rs", "minpoly", "digit-1 matrix has minimal polynomial x^6 - 2x^5 - 3x^4 + 6x^3 + 2x^2 - 4x",
      [](std::string& detail) {
        detail = analysis::minimal_polynomial(linrep::reference_linrep("rs").matrix(1)).to_string();
        return detail == "x^6 - 2x^5 - 3x^4 + 6x^3 + 2x^2 - 4x";
      });
  row(rows, "rs", "closed-form", "sum_rs(2^k - 1) follows the two-case power formula for 2 <= k <= 40",
      [](std::string& detail) {
        const auto f = analysis::verify_integer_formula("rs_pow2");
        detail = join(f.transcript);
        return f.verified;
      });
  row(rows, "rs", "divergence", "the learner finds no synchronised automaton within the state budget",
      [&](std::string& detail) {
        const auto c = analysis::divergence_certificate("rs", ctx.options.max_states, ctx.options.seed);
        detail = c.transcript.empty() ? c.method : c.transcript.back();
        return c.valid;
      });
}

void group_ftm(Context&, std::vector<Row>& rows) {
  row(rows, "ftm", "closed-form", "sum_ftm(n) = a(r) + b(r) and floor(n/2) = a(r) + b(r) + r along (100100)^r",
      [](std::string& detail) {
        const auto f = analysis::verify_integer_formula("ftm_pattern");
        detail = join(f.transcript);
        return f.verified;
      });
  certificate_row(rows, "ftm", "ftm", "(100100)^r", System::fibonacci(), BigRat(1, 2), 0);
}

void group_fib(Context&, std::vector<Row>& rows) {
  using analysis::FibTerm;
  const std::vector<FibTerm> first{{1, 14}, {-18, 8}, {1, 2}};
  const std::vector<FibTerm> second{{1, 14}, {-6, 8}, {-16, 7}, {-16, 4}, {5, 2}};
  const auto golden = Polynomial::from_integers({-1, -1, 1});
  row(rows, "fib-identities", "first", "F(6r+14) - 18F(6r+8) + F(6r+2) = 0 for r <= 200", [&](std::string&) {
    return analysis::fib_identity(first, 6, 200);
  });
  row(rows, "fib-identities", "second", "F(6r+14) - 6F(6r+8) - 16F(6r+7) - 16F(6r+4) + 5F(6r+2) = 0 for r <= 200",
      [&](std::string&) { return analysis::fib_identity(second, 6, 200); });
  row(rows, "fib-identities", "first-divides", "x^2 - x - 1 divides x^12 - 18x^6 + 1", [&](std::string&) {
    return analysis::poly_divides(golden, Polynomial::from_integers({1, 0, 0, 0, 0, 0, -18, 0, 0, 0, 0, 0, 1}));
  });
  row(rows, "fib-identities", "second-divides", "x^2 - x - 1 divides x^12 - 6x^6 - 16x^5 - 16x^2 + 5",
      [&](std::string& detail) {
        const auto p = analysis::shift_polynomial(second);
        const auto reduced = analysis::divmod(p, Polynomial::from_integers({0, 0, 1})).quotient;
        detail = reduced.to_string();
        return analysis::poly_divides(golden, reduced);
      });
}

void group_growth(Context&, std::vector<Row>& rows) {
  const std::pair<const char*, double> scans[] = {{"T", 1.0}, {"CA", std::log(2.0) / std::log(3.0)}};
  for (const auto& [seq, beta] : scans) {
    row(rows, "growth", seq, "max f(n)/n^beta over n <= N stays constant for N = 2^10..2^20 (drift < 5%)",
        [&](std::string& detail) {
          const auto g = analysis::growth_scan(seq, beta, 10, 20);
          std::ostringstream out;
          out << "beta " << beta << ", max " << g.maxima.back().second << ", drift " << g.drift;
          detail = out.str();
          return g.drift < 0.05;
        });
  }
}

const std::vector<std::pair<std::string, Group>>& groups() {
  static const std::vector<std::pair<std::string, Group>> table = {
      {"eval", group_eval},
      {"linrep", group_linrep},
      {"sum-index", group_sum_index},
      {"sync", group_sync},
      {"pd", [](Context&, std::vector<Row>& rows) { affine_group(kAffine[0], rows); }},
      {"mw", [](Context&, std::vector<Row>& rows) { affine_group(kAffine[1], rows); }},
      {"pf", [](Context&, std::vector<Row>& rows) { affine_group(kAffine[2], rows); }},
      {"le", group_le},
      {"bs", group_bs},
      {"sc", [](Context&, std::vector<Row>& rows) { affine_group(kAffine[3], rows); }},
      {"rs", group_rs},
      {"ftm", group_ftm},
      {"fib-identities", group_fib},
      {"growth", group_growth},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& group_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : groups()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<Row> run(std::string_view group, const Options& options) {
  Context ctx{options, {}};
  std::vector<Row> rows;
  bool found = false;
  for (const auto& [name, fn] : groups()) {
    if (group == "all" || group == name) {
      fn(ctx, rows);
      found = true;
    }
  }
  if (!found) {
    std::string known = "all";
    for (const auto& n : group_names()) known += " " + n;
    throw Error("unknown group '" + std::string(group) + "'; known: " + known);
  }
  return rows;
}

bool all_passed(const std::vector<Row>& rows) {
  for (const auto& r : rows) {
    if (!r.passed) return false;
  }
  return true;
}

std::string format_table(const std::vector<Row>& rows) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    passed += r.passed;
    char time[32];
    std::snprintf(time, sizeof time, "%7.2fs", r.seconds);
    out << (r.passed ? "PASS " : "FAIL ") << time << "  " << r.group << "/" << r.id << "  " << r.claim << "\n";
    if (!r.detail.empty()) out << "                 " << r.detail << "\n";
  }
  out << passed << "/" << rows.size() << " rows passed\n";
  return out.str();
}

std::string to_json(const std::vector<Row>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["group"] = r.group;
    j["id"] = r.id;
    j["claim"] = r.claim;
    j["passed"] = r.passed;
    j["detail"] = r.detail;
    j["seconds"] = r.seconds;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace syncsum::reproduce
