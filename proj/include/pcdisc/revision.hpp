#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pcdisc/discrepancy.hpp"
#include "pcdisc/pc_matrix.hpp"
#include "pcdisc/ranking.hpp"

namespace pcdisc {

struct AnalysisOptions {
  SolverOptions solver{};
  RankingMethod method = RankingMethod::eigenvector;
};

/// Where the expert should look next.
struct RevisionSuggestion {
  IndexPair position;  // 0-based, i < j
  double current_value = 1.0;
  double local_discrepancy = 0.0;
  double consistent_target = 1.0;  // mu_i / mu_j, zeroes eps(i,j) under the current ranking
};

/// Everything derived from one matrix. lambda_max and the Saaty index
/// always come from the eigen solve, whatever ranking method is chosen.
struct Bundle {
  PCMatrix matrix;
  EigenSolution eigen;
  RankingVector ranking;
  double saaty = 0.0;
  DiscrepancyMatrix discrepancy;
  CopReport cop;
  TriadReport triads;
  RevisionSuggestion suggestion;

  static Bundle compute(PCMatrix m, const AnalysisOptions& opts = {}) {
    EigenSolution eig = principal_eigen(m, opts.solver);
    RankingVector mu = opts.method == RankingMethod::eigenvector ? rescale(eig)
                                                                 : geometric_mean_ranking(m);
    const double s = saaty_index(eig.lambda_max, m.size());
    DiscrepancyMatrix d = local_discrepancy_matrix(m, mu);
    CopReport cop = cop_safety_at(m, mu, d.global);
    TriadReport triads = consistency_scan(m);
    const auto [i, j] = d.argmax;
    RevisionSuggestion sug{d.argmax, m(i, j), d(i, j), mu[i] / mu[j]};
    return Bundle{std::move(m), std::move(eig), std::move(mu), s,
                  std::move(d), std::move(cop), triads, sug};
  }
};

struct StepRecord {
  std::size_t i = 0;  // 0-based
  std::size_t j = 0;
  double old_value = 1.0;
  double new_value = 1.0;
  std::chrono::system_clock::time_point at;
};

/// Nothing left to undo.
class UndoError : public std::logic_error {
 public:
  UndoError() : std::logic_error("nothing to undo") {}
};

/// Expert revision loop: a history of matrices with the bundle of the
/// latest one. Values are immutable; apply() and undo() return new sessions.
class RevisionSession {
 public:
  static RevisionSession open(PCMatrix m, AnalysisOptions opts = {}) {
    Bundle b = Bundle::compute(m, opts);
    return RevisionSession({std::move(m)}, {}, std::move(b), opts);
  }

  const Bundle& bundle() const noexcept { return bundle_; }
  const PCMatrix& matrix() const noexcept { return history_.back(); }
  const std::vector<PCMatrix>& history() const noexcept { return history_; }
  const std::vector<StepRecord>& step_log() const noexcept { return log_; }
  const AnalysisOptions& options() const noexcept { return opts_; }

  const RevisionSuggestion& suggest() const noexcept { return bundle_.suggestion; }

  /// Sets m_ij = v (and m_ji = 1/v). The expert's value is taken as given.
  [[nodiscard]] RevisionSession apply(std::size_t i, std::size_t j, double v) const {
    PCMatrix next = matrix().with_entry(i, j, v);
    Bundle b = Bundle::compute(next, opts_);
    auto history = history_;
    auto log = log_;
    log.push_back({i, j, matrix()(i, j), v, std::chrono::system_clock::now()});
    history.push_back(std::move(next));
    return RevisionSession(std::move(history), std::move(log), std::move(b), opts_);
  }

  [[nodiscard]] RevisionSession undo() const {
    if (history_.size() < 2) throw UndoError();
    auto history = history_;
    auto log = log_;
    history.pop_back();
    log.pop_back();
    Bundle b = Bundle::compute(history.back(), opts_);
    return RevisionSession(std::move(history), std::move(log), std::move(b), opts_);
  }

 private:
  RevisionSession(std::vector<PCMatrix> history, std::vector<StepRecord> log, Bundle bundle,
                  AnalysisOptions opts)
      : history_(std::move(history)), log_(std::move(log)), bundle_(std::move(bundle)), opts_(opts) {}

  std::vector<PCMatrix> history_;
  std::vector<StepRecord> log_;
  Bundle bundle_;
  AnalysisOptions opts_;
};

}  // namespace pcdisc
