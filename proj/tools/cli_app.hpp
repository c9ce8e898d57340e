#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pcdisc/pcdisc.hpp"

namespace pcdisc::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kSolverFailure = 2,
  kCopViolated = 3,
  kCopNotProven = 4,
};

enum class OutputMode { text, json };

struct CliConfig {
  std::string input_path = "-";
  MatrixFormat format = MatrixFormat::automatic;
  OutputMode output = OutputMode::text;
  double tol = SolverOptions{}.tol;
  int max_iter = SolverOptions{}.max_iter;
  RankingMethod method = RankingMethod::eigenvector;

  AnalysisOptions analysis() const { return {{tol, max_iter}, method}; }
};

/// One expert revision "i,j,value" with 1-based coordinates.
struct StepArg {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

namespace detail {

inline std::string fixed3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string fixed3_or_na(double v) { return std::isfinite(v) ? fixed3(v) : std::string("n/a"); }

inline std::string coords(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline StepArg parse_step(const std::string& text) {
  const auto cells = pcdisc::detail::split_csv_record(text);
  if (cells.size() != 3) throw ValidationError("step must be i,j,value: '" + text + "'");
  auto index = [&](const std::string& cell) -> std::size_t {
    const auto v = pcdisc::detail::parse_plain_number(cell);
    if (!v || *v < 1 || *v != static_cast<double>(static_cast<long long>(*v))) {
      throw ValidationError("step index must be a positive integer: '" + text + "'");
    }
    return static_cast<std::size_t>(*v);
  };
  StepArg s{index(cells[0]), index(cells[1]), 0.0};
  const auto v = pcdisc::detail::parse_number(cells[2]);
  if (!v) throw ValidationError("step value is not a number: '" + text + "'");
  s.value = *v;
  return s;
}

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void print_weights(std::ostream& out, const PCMatrix& m, const RankingVector& r) {
  out << "method: " << to_string(r.method) << "\nweights:\n";
  for (std::size_t i = 0; i < r.size(); ++i) out << "  " << m.labels()[i] << "  " << fixed3(r[i]) << '\n';
}

inline void print_discrepancy(std::ostream& out, const DiscrepancyMatrix& d) {
  out << "local discrepancy:\n";
  for (std::size_t i = 0; i < d.n; ++i) {
    out << ' ';
    for (std::size_t j = 0; j < d.n; ++j) out << ' ' << fixed3(d(i, j));
    out << '\n';
  }
  out << "global discrepancy: " << fixed3(d.global) << " at " << coords(d.argmax.i, d.argmax.j) << '\n';
}

inline void print_cop(std::ostream& out, const CopReport& c) {
  out << "delta: " << fixed3(c.delta) << '\n'
      << "POP  threshold " << fixed3(c.pop_threshold) << "  margin " << fixed3_or_na(c.pop_margin) << "  "
      << (c.pop_safe ? "safe" : "not proven") << '\n'
      << "POIP threshold " << fixed3(c.poip_threshold) << "  margin " << fixed3_or_na(c.poip_margin) << "  "
      << (c.poip_safe ? "safe" : "not proven") << '\n';
  out << "POP violations:";
  if (c.pop_violations.empty()) out << " none";
  for (const auto& p : c.pop_violations) out << ' ' << coords(p.i, p.j);
  out << "\nPOIP violations:";
  if (c.poip_violations.empty()) out << " none";
  for (const auto& q : c.poip_violations) out << ' ' << coords(q.i, q.j) << " vs " << coords(q.k, q.l);
  out << '\n';
}

inline void print_suggestion(std::ostream& out, const RevisionSuggestion& s, bool round_target) {
  const double target = round_target ? std::round(s.consistent_target * 100.0) / 100.0 : s.consistent_target;
  char buf[48];
  std::snprintf(buf, sizeof buf, round_target ? "%.2f" : "%.3f", target);
  out << "revise " << coords(s.position.i, s.position.j) << ": current " << fixed3(s.current_value)
      << ", local discrepancy " << fixed3(s.local_discrepancy) << ", consistent target " << buf << '\n';
}

inline nlohmann::json rank_report(const Bundle& b) {
  return {{"command", "rank"},
          {"labels", b.matrix.labels()},
          {"ranking", interchange::ranking(b.ranking)},
          {"eigen", interchange::eigen(b.eigen)},
          {"saaty_index", b.saaty}};
}

}  // namespace detail

/// COP exit code: 0 proven safe, 3 direct violation, 4 no violation but not proven.
inline int cop_exit_code(const CopReport& c) {
  if (!c.pop_violations.empty() || !c.poip_violations.empty()) return kCopViolated;
  if (c.pop_safe && c.poip_safe) return kOk;
  return kCopNotProven;
}

inline int cmd_rank(const Bundle& b, OutputMode mode, std::ostream& out) {
  if (mode == OutputMode::json) {
    out << detail::rank_report(b).dump(2) << '\n';
    return kOk;
  }
  detail::print_weights(out, b.matrix, b.ranking);
  out << "lambda_max: " << detail::fixed3(b.eigen.lambda_max) << '\n'
      << "saaty_index: " << detail::fixed3(b.saaty) << '\n';
  return kOk;
}

inline int cmd_discrepancy(const Bundle& b, OutputMode mode, std::ostream& out) {
  if (mode == OutputMode::json) {
    nlohmann::json j{{"command", "discrepancy"},
                     {"labels", b.matrix.labels()},
                     {"ranking", interchange::ranking(b.ranking)},
                     {"discrepancy", interchange::discrepancy(b.discrepancy)}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  detail::print_discrepancy(out, b.discrepancy);
  return kOk;
}

inline int cmd_cop(const Bundle& b, OutputMode mode, std::ostream& out) {
  if (mode == OutputMode::json) {
    nlohmann::json j{{"command", "cop"},
                     {"labels", b.matrix.labels()},
                     {"ranking", interchange::ranking(b.ranking)},
                     {"cop", interchange::cop(b.cop)}};
    out << j.dump(2) << '\n';
  } else {
    detail::print_cop(out, b.cop);
  }
  return cop_exit_code(b.cop);
}

inline int cmd_advise(const PCMatrix& m, const AnalysisOptions& opts, const std::vector<StepArg>& steps,
                      OutputMode mode, bool round_target, std::ostream& out) {
  auto session = RevisionSession::open(m, opts);
  const std::size_t n = m.size();
  for (const auto& s : steps) {
    if (s.i > n || s.j > n) throw ValidationError("step index out of range", s.i, s.j);
    if (s.i == s.j) throw ValidationError("diagonal entries are fixed at 1", s.i, s.j);
    session = session.apply(s.i - 1, s.j - 1, s.value);
  }
  const Bundle& b = session.bundle();
  if (mode == OutputMode::json) {
    nlohmann::json applied = nlohmann::json::array();
    for (const auto& rec : session.step_log()) {
      applied.push_back({{"i", rec.i + 1}, {"j", rec.j + 1}, {"old_value", rec.old_value}, {"new_value", rec.new_value}});
    }
    nlohmann::json j{{"command", "advise"},
                     {"steps", std::move(applied)},
                     {"suggestion", interchange::suggestion(b.suggestion)},
                     {"bundle", interchange::bundle(b)}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  if (!steps.empty()) {
    for (const auto& rec : session.step_log()) {
      out << "applied " << detail::coords(rec.i, rec.j) << ": " << detail::fixed3(rec.old_value) << " -> "
          << detail::fixed3(rec.new_value) << '\n';
    }
    detail::print_weights(out, b.matrix, b.ranking);
    out << "lambda_max: " << detail::fixed3(b.eigen.lambda_max) << '\n'
        << "saaty_index: " << detail::fixed3(b.saaty) << '\n';
    detail::print_discrepancy(out, b.discrepancy);
    detail::print_cop(out, b.cop);
  }
  detail::print_suggestion(out, b.suggestion, round_target);
  return kOk;
}

/// Entry point shared by the pcdisc binary and the tests.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise-comparison ranking, discrepancy and order-preservation checks", "pcdisc"};
  app.require_subcommand(1);

  CliConfig cfg;
  app.add_option("-i,--input", cfg.input_path, "Matrix file, or - for stdin")->capture_default_str();
  app.add_option("-f,--format", cfg.format, "Input format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, MatrixFormat>{
          {"csv", MatrixFormat::csv}, {"json", MatrixFormat::json}, {"auto", MatrixFormat::automatic}}));
  app.add_option("-o,--output", cfg.output, "Output mode")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputMode>{{"text", OutputMode::text}, {"json", OutputMode::json}}));
  app.add_option("--tol", cfg.tol, "Power-iteration tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--max-iter", cfg.max_iter, "Power-iteration limit")->check(CLI::Range(1, INT_MAX))->capture_default_str();
  app.add_option("-m,--method", cfg.method, "Ranking method")
      ->transform(CLI::CheckedTransformer(std::map<std::string, RankingMethod>{
          {"eigenvector", RankingMethod::eigenvector}, {"geometric_mean", RankingMethod::geometric_mean}}));

  auto* rank = app.add_subcommand("rank", "Priority weights, lambda_max and Saaty index")->fallthrough();
  auto* disc = app.add_subcommand("discrepancy", "Local discrepancy matrix and global discrepancy")->fallthrough();
  auto* cop = app.add_subcommand("cop", "Order-preservation violations and safety verdicts")->fallthrough();
  auto* advise = app.add_subcommand("advise", "Suggest the next judgment to revise, or apply revisions")->fallthrough();
  std::vector<std::string> step_args;
  bool round_target = false;
  advise->add_option("-s,--step", step_args, "Revision i,j,value (1-based, repeatable)");
  advise->add_flag("--round-target", round_target, "Show the consistent target rounded to 2 decimals");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    std::vector<StepArg> steps;
    for (const auto& s : step_args) steps.push_back(detail::parse_step(s));
    const std::string text = detail::read_input(cfg.input_path, in);
    const PCMatrix m = parse_matrix(text, cfg.format, cfg.input_path);
    if (advise->parsed()) return cmd_advise(m, cfg.analysis(), steps, cfg.output, round_target, out);
    const Bundle b = Bundle::compute(m, cfg.analysis());
    if (rank->parsed()) return cmd_rank(b, cfg.output, out);
    if (disc->parsed()) return cmd_discrepancy(b, cfg.output, out);
    if (cop->parsed()) return cmd_cop(b, cfg.output, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kInvalidInput;
}

}  // namespace pcdisc::cli
