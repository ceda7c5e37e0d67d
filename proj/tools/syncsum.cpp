#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "syncsum/analysis.hpp"
#include "syncsum/learn.hpp"
#include "syncsum/reproduce.hpp"

using namespace syncsum;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 1;
constexpr int kDiverged = 2;
constexpr int kFailed = 3;

struct Range {
  BigInt from, to;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      BigInt n(text);
      return {n, n};
    }
    Range r{BigInt(text.substr(0, dots)), BigInt(text.substr(dots + 2))};
    if (r.from < 0 || r.to < r.from) throw Error("empty range '" + text + "'");
    return r;
  } catch (const std::invalid_argument&) {
    throw Error("bad number or range '" + text + "' (expected n or a..b)");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw Error("cannot write '" + output + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

// A linrep file, or the name of a shipped fixture.
linrep::LinRep load_linrep(const std::string& source) {
  if (std::filesystem::exists(source)) return linrep::from_json(read_file(source));
  return linrep::reference_linrep(source);
}

std::string values_text(const std::vector<std::string>& values) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : " ") + v;
  return out;
}

std::string report_json(const logic::VerificationReport& r) {
  json j;
  j["query"] = r.query;
  j["verdict"] = r.verdict;
  if (r.counterexample) {
    j["counterexample"] = json::array();
    for (const auto& v : *r.counterexample) j["counterexample"].push_back(v.get_str());
  }
  j["detail"] = r.detail;
  return j.dump();
}

void print_report(const logic::VerificationReport& r) {
  std::cout << r.query << ": " << (r.verdict ? "TRUE" : "FALSE");
  if (r.counterexample) {
    std::cout << " counterexample";
    for (const auto& v : *r.counterexample) std::cout << " " << v.get_str();
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decides whether running sums of automatic sequences are synchronised."};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool as_json = false;
  std::size_t max_states = 64, test_len = 8;
  std::string output;
  app.add_option("--seed", seed, "random seed for the learner's equivalence tests");
  app.add_flag("--json", as_json, "print JSON instead of text");
  app.add_option("--max-states", max_states, "learner state budget");
  app.add_option("--test-len", test_len, "length of the exhaustive equivalence sweep");
  app.add_option("-o,--output", output, "write the result to a file");
  app.fallthrough();

  std::string seq, arg, pattern, alpha = "", delta = "0", beta = "1", group = "all";
  std::optional<int> target;
  std::optional<unsigned> digit;

  auto* eval = app.add_subcommand("eval", "sequence values d(n) for n or a..b");
  eval->add_option("sequence", seq)->required();
  eval->add_option("range", arg)->required();

  auto* sum = app.add_subcommand("sum", "running sums d(0) + ... + d(n) for n or a..b");
  sum->add_option("sequence", seq)->required();
  sum->add_option("range", arg)->required();

  auto* derive = app.add_subcommand("derive", "linear representation of a running sum (JSON)");
  derive->add_option("sequence", seq)->required();
  derive->add_option("--target", target, "count occurrences of this value instead of summing");

  auto* learn_cmd = app.add_subcommand("learn", "learn and verify a synchronised automaton for a running sum");
  learn_cmd->add_option("sequence", seq)->required();

  auto* verify = app.add_subcommand("verify", "check a predicate file is the running sum of a sequence");
  verify->add_option("predicate", arg)->required();
  verify->add_option("sequence", seq)->required();

  auto* minpoly = app.add_subcommand("minpoly", "minimal polynomial of a pattern block or a digit matrix");
  minpoly->add_option("linrep", arg, "linrep JSON file or fixture name")->required();
  minpoly->add_option("--pattern", pattern, "numeral pattern such as \"(10)^r 1\"");
  minpoly->add_option("--digit", digit, "use a single digit matrix");

  auto* certify = app.add_subcommand("certify", "non-synchronisation certificate");
  certify->add_option("sequence", seq)->required();
  certify->add_option("--pattern", pattern, "numeral pattern; omit for rs and bs");
  certify->add_option("--alpha", alpha, "slope of the comparison line");
  certify->add_option("--delta", delta, "offset of the comparison line");
  certify->add_option("--beta", beta, "growth exponent");

  auto* repro = app.add_subcommand("reproduce", "run the reproduction checks");
  repro->add_option("group", group, "all or one group");

  auto* cat = app.add_subcommand("catalog", "list or dump catalog automata");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "catalog names");
  auto* cat_dump = cat->add_subcommand("dump", "automaton text of one sequence");
  cat_dump->add_option("sequence", seq)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*eval || *sum) {
      const auto name = sequences::canonical_name(seq);
      const auto range = parse_range(arg);
      std::vector<std::string> values;
      if (*eval) {
        const auto d = sequences::catalog(name);
        for (BigInt n = range.from; n <= range.to; ++n) values.push_back(std::to_string(sequences::eval(d, n)));
      } else if (range.to <= 1000000) {
        const auto sums = sequences::running_sums(name, range.to.get_ui());
        for (auto n = range.from.get_ui(); n <= range.to.get_ui(); ++n) values.push_back(std::to_string(sums[n]));
      } else {
        const auto lr = linrep::derive_running_sum_linrep(sequences::catalog(name));
        for (BigInt n = range.from; n <= range.to; ++n) values.push_back(linrep::eval_linrep(lr, n).get_str());
      }
      if (as_json) {
        json j;
        j["sequence"] = name;
        j["from"] = range.from.get_str();
        j["to"] = range.to.get_str();
        j["values"] = values;
        emit(j.dump(2), output);
      } else {
        emit(values_text(values), output);
      }
      return 0;
    }

    if (*derive) {
      const auto d = sequences::catalog(seq);
      const auto lr = target ? linrep::derive_sum_linrep(d, *target) : linrep::derive_running_sum_linrep(d);
      emit(linrep::to_json(lr), output);
      return 0;
    }

    if (*learn_cmd) {
      auto oracle = learn::MembershipOracle::for_sequence(sequences::canonical_name(seq));
      learn::LearnOptions options;
      options.max_states = max_states;
      options.test_len = test_len;
      options.seed = seed;
      const auto result = learn::learn_sync(oracle, options);
      if (as_json) {
        json j;
        j["sequence"] = oracle.name();
        j["outcome"] = learn::to_string(result.outcome);
        j["states"] = result.stats.states;
        j["rounds"] = result.stats.rounds;
        j["membership_queries"] = result.stats.membership_queries;
        j["reports"] = json::array();
        for (const auto& r : result.reports) j["reports"].push_back(json::parse(report_json(r)));
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& line : result.transcript) std::cout << line << "\n";
        for (const auto& r : result.reports) print_report(r);
        std::cout << "outcome: " << learn::to_string(result.outcome) << "\n";
      }
      if (result.predicate && !output.empty()) emit(logic::to_text(*result.predicate), output);
      switch (result.outcome) {
        case learn::Outcome::proved:
        case learn::Outcome::evaluation_verified:
          return 0;
        case learn::Outcome::diverged:
          return kDiverged;
        case learn::Outcome::candidate_failed:
          return kFailed;
      }
      return kFailed;
    }

    if (*verify) {
      const auto p = logic::parse_predicate(read_file(arg));
      const auto d = sequences::catalog(seq);
      const logic::VerificationReport reports[] = {logic::verify_functional(p), logic::verify_total(p),
                                                   logic::verify_inductive(p, d)};
      bool ok = true;
      for (const auto& r : reports) {
        ok = ok && r.verdict;
        if (as_json) {
          std::cout << report_json(r) << "\n";
        } else {
          print_report(r);
        }
      }
      return ok ? 0 : kFailed;
    }

    if (*minpoly) {
      const auto lr = load_linrep(arg);
      analysis::Matrix block;
      if (!pattern.empty()) {
        block = linrep::pattern_matrix(lr, numeration::parse_pattern(pattern, lr.system().as_msd())).block;
      } else if (digit) {
        block = lr.matrix(*digit);
      } else {
        throw Error("minpoly needs --pattern or --digit");
      }
      const auto p = analysis::minimal_polynomial(block);
      const auto repeated = analysis::repeated_nonzero_root(p);
      if (as_json) {
        json j;
        j["polynomial"] = p.to_string();
        j["coefficients"] = json::array();
        for (const auto& c : p.coefficients()) j["coefficients"].push_back(format_rational(c));
        j["repeated_nonzero_root"] = repeated ? json(repeated->to_string()) : json(nullptr);
        emit(j.dump(2), output);
      } else {
        emit(p.to_string(), output);
      }
      return 0;
    }

    if (*certify) {
      const auto name = sequences::canonical_name(seq);
      analysis::Certificate cert;
      try {
        if (pattern.empty()) {
          cert = analysis::divergence_certificate(name, max_states, seed);
        } else {
          if (alpha.empty()) throw Error("certify needs --alpha with --pattern");
          const auto sys = sequences::catalog(name).system.as_msd();
          cert = analysis::nonsync_certificate(name, numeration::parse_pattern(pattern, sys), parse_rational(alpha),
                                               parse_rational(delta), parse_rational(beta));
        }
      } catch (const Error& e) {
        std::cerr << "certificate refused: " << e.what() << "\n";
        return kFailed;
      }
      if (as_json || !output.empty()) {
        emit(analysis::to_json(cert), output);
      } else {
        for (const auto& line : cert.transcript) std::cout << line << "\n";
        std::cout << cert.narrative << "\n";
      }
      return cert.valid ? 0 : kFailed;
    }

    if (*repro) {
      reproduce::Options options;
      options.seed = seed;
      options.max_states = max_states;
      options.test_len = test_len;
      const auto rows = reproduce::run(group, options);
      emit(as_json ? reproduce::to_json(rows) : reproduce::format_table(rows), output);
      return reproduce::all_passed(rows) ? 0 : kFailed;
    }

    if (*cat_list) {
      for (const auto& name : sequences::catalog_names()) {
        const auto d = sequences::catalog(name);
        std::cout << name << "  " << d.system.tag() << "  " << d.num_states() << " states\n";
      }
      return 0;
    }
    if (*cat_dump) {
      emit(sequences::to_string(sequences::catalog(seq)), output);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
