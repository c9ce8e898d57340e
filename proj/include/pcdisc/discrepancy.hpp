#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pcdisc/pc_matrix.hpp"
#include "pcdisc/ranking.hpp"

namespace pcdisc {

/// Ordered index pair, 0-based.
struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// (i, j, k, l), 0-based: m_ij > m_kl > 1 was not reflected in the ranking.
struct IndexQuad {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  friend bool operator==(const IndexQuad&, const IndexQuad&) = default;
};

/// Ratio of the ranking-implied comparison to the judgment:
/// eps(i,j) = mu_i / mu_j / m_ij.
inline double epsilon(const PCMatrix& m, const RankingVector& mu, std::size_t i, std::size_t j) {
  if (i == j) return 1.0;
  return (mu[i] / mu[j]) / m(i, j);
}

/// Symmetric relative mismatch max(eps - 1, 1/eps - 1).
inline double local_discrepancy(const PCMatrix& m, const RankingVector& mu, std::size_t i, std::size_t j) {
  if (i == j) return 0.0;
  const double e = epsilon(m, mu, i, j);
  return std::max(e - 1.0, 1.0 / e - 1.0);
}

struct DiscrepancyMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // row-major n*n
  double global = 0.0;
  IndexPair argmax{0, 1};  // smallest (i, j), i < j, attaining global

  double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
};

inline DiscrepancyMatrix local_discrepancy_matrix(const PCMatrix& m, const RankingVector& mu) {
  const std::size_t n = m.size();
  DiscrepancyMatrix d{n, std::vector<double>(n * n, 0.0), -1.0, {0, 1}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Computed once per unordered pair: eps(j,i) = 1/eps(i,j) only up to
      // rounding, and the matrix must be exactly symmetric.
      const double v = local_discrepancy(m, mu, i, j);
      d.values[i * n + j] = v;
      d.values[j * n + i] = v;
      if (v > d.global) {
        d.global = v;
        d.argmax = {i, j};
      }
    }
  }
  return d;
}

/// (lambda_max - n) / (n - 1), with |values| below 1e-10 reported as 0.
inline double saaty_index(double lambda_max, std::size_t n) {
  if (n < 2) throw std::invalid_argument("saaty_index needs n >= 2");
  const double s = (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  return std::abs(s) < 1e-10 ? 0.0 : s;
}

/// Sum over i != j of m_ji * mu_i / mu_j. Equals lambda_max - 1 for every
/// column j when mu is the principal eigenvector.
inline double eigen_column_sum(const PCMatrix& m, const RankingVector& mu, std::size_t j) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i != j) acc += epsilon(m, mu, i, j);
  }
  return acc;
}

/// Saaty's index recovered as the mean of (eps(i,j) - 1) over i != j for a
/// fixed column j. Only meaningful for the eigenvector ranking.
inline double saaty_index_via_epsilon(const PCMatrix& m, const RankingVector& mu_max, std::size_t j) {
  if (mu_max.method != RankingMethod::eigenvector) {
    throw std::invalid_argument("saaty_index_via_epsilon requires the eigenvector ranking");
  }
  if (j >= m.size()) throw std::out_of_range("column index out of range");
  const double n = static_cast<double>(m.size());
  return eigen_column_sum(m, mu_max, j) / (n - 1.0) - 1.0;
}

/// Pairs with m_ij > 1 but mu_i <= mu_j.
inline std::vector<IndexPair> check_pop_direct(const PCMatrix& m, const RankingVector& mu) {
  std::vector<IndexPair> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m(i, j) > 1.0 && mu[i] <= mu[j]) out.push_back({i, j});
    }
  }
  return out;
}

namespace detail {

inline std::vector<IndexPair> dominances(const PCMatrix& m) {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m(i, j) > 1.0) out.push_back({i, j});
    }
  }
  return out;
}

}  // namespace detail

/// Quadruples with m_ij > m_kl > 1 but mu_i/mu_j <= mu_k/mu_l.
inline std::vector<IndexQuad> check_poip_direct(const PCMatrix& m, const RankingVector& mu) {
  std::vector<IndexQuad> out;
  const auto dom = detail::dominances(m);
  for (const auto& a : dom) {
    for (const auto& b : dom) {
      if (m(a.i, a.j) > m(b.i, b.j) && mu[a.i] / mu[a.j] <= mu[b.i] / mu[b.j]) {
        out.push_back({a.i, a.j, b.i, b.j});
      }
    }
  }
  return out;
}

/// Direct order-preservation violations next to the sufficient-condition
/// verdicts at discrepancy bound delta. Margins are +inf when there is
/// nothing to check.
struct CopReport {
  double delta = 0.0;
  std::vector<IndexPair> pop_violations;
  std::vector<IndexQuad> poip_violations;
  bool pop_safe = true;
  bool poip_safe = true;
  double pop_threshold = 1.0;
  double poip_threshold = 1.0;
  double pop_margin = std::numeric_limits<double>::infinity();
  double poip_margin = std::numeric_limits<double>::infinity();
};

/// Safety verdicts at a caller-chosen delta (what-if analysis).
inline CopReport cop_safety_at(const PCMatrix& m, const RankingVector& mu, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be >= 0");
  CopReport r;
  r.delta = delta;
  r.pop_threshold = delta + 1.0;
  r.poip_threshold = r.pop_threshold * r.pop_threshold;
  r.pop_violations = check_pop_direct(m, mu);
  r.poip_violations = check_poip_direct(m, mu);

  const auto dom = detail::dominances(m);
  for (const auto& a : dom) {
    r.pop_margin = std::min(r.pop_margin, m(a.i, a.j) - r.pop_threshold);
    for (const auto& b : dom) {
      if (m(a.i, a.j) > m(b.i, b.j)) {
        r.poip_margin = std::min(r.poip_margin, m(a.i, a.j) / m(b.i, b.j) - r.poip_threshold);
      }
    }
  }
  r.pop_safe = r.pop_margin > 0.0;
  r.poip_safe = r.poip_margin > 0.0;
  return r;
}

/// Safety verdicts at delta = global discrepancy of (m, mu).
inline CopReport cop_safety(const PCMatrix& m, const RankingVector& mu) {
  return cop_safety_at(m, mu, local_discrepancy_matrix(m, mu).global);
}

}  // namespace pcdisc
