#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <string>

#include <nlohmann/json.hpp>

#include "pcdisc/discrepancy.hpp"
#include "pcdisc/matrix_io.hpp"
#include "pcdisc/ranking.hpp"
#include "pcdisc/revision.hpp"

// JSON interchange form shared by the CLI and the HTTP service. All indices
// are 1-based. Non-finite margins (nothing to check) are written as null.
// Layout is described by schema/interchange.schema.json.

namespace pcdisc::interchange {

using nlohmann::json;

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json pair(const IndexPair& p) { return json::array({p.i + 1, p.j + 1}); }

inline json quad(const IndexQuad& q) { return json::array({q.i + 1, q.j + 1, q.k + 1, q.l + 1}); }

inline json ranking(const RankingVector& r) {
  return {{"method", to_string(r.method)}, {"weights", r.weights}};
}

inline json eigen(const EigenSolution& e) {
  return {{"lambda_max", e.lambda_max},
          {"vector", e.vector},
          {"iterations", e.iterations},
          {"residual", e.residual}};
}

inline json discrepancy(const DiscrepancyMatrix& d) {
  json rows = json::array();
  for (std::size_t i = 0; i < d.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < d.n; ++j) row.push_back(d(i, j));
    rows.push_back(std::move(row));
  }
  return {{"values", std::move(rows)}, {"global", d.global}, {"argmax", pair(d.argmax)}};
}

inline json cop(const CopReport& c) {
  json pop = json::array();
  for (const auto& p : c.pop_violations) pop.push_back(pair(p));
  json poip = json::array();
  for (const auto& q : c.poip_violations) poip.push_back(quad(q));
  return {{"delta", c.delta},
          {"pop_violations", std::move(pop)},
          {"poip_violations", std::move(poip)},
          {"pop_safe", c.pop_safe},
          {"poip_safe", c.poip_safe},
          {"pop_threshold", c.pop_threshold},
          {"poip_threshold", c.poip_threshold},
          {"pop_margin", number_or_null(c.pop_margin)},
          {"poip_margin", number_or_null(c.poip_margin)}};
}

inline json triads(const TriadReport& t) {
  json worst = nullptr;
  if (t.worst_triad) {
    const auto& [i, j, k] = *t.worst_triad;
    worst = json::array({i + 1, j + 1, k + 1});
  }
  return {{"worst_triad", std::move(worst)},
          {"worst_product", t.worst_product},
          {"is_consistent", t.is_consistent}};
}

inline json suggestion(const RevisionSuggestion& s) {
  return {{"position", pair(s.position)},
          {"current_value", s.current_value},
          {"local_discrepancy", s.local_discrepancy},
          {"consistent_target", s.consistent_target}};
}

inline json bundle(const Bundle& b) {
  return {{"labels", b.matrix.labels()},
          {"matrix", b.matrix.rows()},
          {"ranking", ranking(b.ranking)},
          {"eigen", eigen(b.eigen)},
          {"saaty_index", b.saaty},
          {"discrepancy", discrepancy(b.discrepancy)},
          {"cop", cop(b.cop)},
          {"triads", triads(b.triads)},
          {"suggestion", suggestion(b.suggestion)}};
}

inline std::string iso8601(std::chrono::system_clock::time_point tp) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  const auto len = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char frac[8];
  std::snprintf(frac, sizeof frac, ".%03dZ", static_cast<int>(ms % 1000));
  return std::string(buf, len) + frac;
}

inline json step(const StepRecord& s) {
  return {{"i", s.i + 1},
          {"j", s.j + 1},
          {"old_value", s.old_value},
          {"new_value", s.new_value},
          {"timestamp", iso8601(s.at)}};
}

inline json step_log(const RevisionSession& s) {
  json out = json::array();
  for (const auto& rec : s.step_log()) out.push_back(step(rec));
  return out;
}

}  // namespace pcdisc::interchange
