#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcdisc/pc_matrix.hpp"

namespace pcdisc {

struct SolverOptions {
  double tol = 1e-12;
  int max_iter = 10000;
};

/// Principal (Perron) eigenpair of a PC matrix.
struct EigenSolution {
  double lambda_max = 0.0;
  std::vector<double> vector;  // positive, scaled to unit sum
  int iterations = 0;
  double residual = 0.0;  // ||M v - lambda v||_inf for the returned v
};

/// Power iteration ran out of iterations.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, double residual)
      : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) +
                           " iterations (last step " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

enum class RankingMethod { eigenvector, geometric_mean };

inline const char* to_string(RankingMethod m) {
  return m == RankingMethod::eigenvector ? "eigenvector" : "geometric_mean";
}

/// Priority weights, positive and summing to one.
struct RankingVector {
  std::vector<double> weights;
  RankingMethod method = RankingMethod::eigenvector;

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](std::size_t i) const noexcept { return weights[i]; }
};

namespace detail {

inline void multiply(const PCMatrix& m, std::span<const double> v, std::span<double> out) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
}

inline void normalize_sum(std::span<double> v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
}

}  // namespace detail

/// Power iteration from a caller-supplied positive start vector.
///
/// Iterates v <- Mv / sum(Mv). Stops once successive iterates differ by
/// less than tol in max-norm and the eigen-residual of the current iterate
/// is also within tol. lambda_max is the mean of (Mv)_i / v_i.
inline EigenSolution principal_eigen(const PCMatrix& m, std::span<const double> start,
                                     SolverOptions opts = {}) {
  const std::size_t n = m.size();
  if (start.size() != n) throw std::invalid_argument("start vector has wrong dimension");
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw std::invalid_argument("invalid solver options");
  for (double x : start) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("start vector must be positive");
  }

  std::vector<double> v(start.begin(), start.end());
  detail::normalize_sum(v);
  std::vector<double> mv(n);
  std::vector<double> next(n);

  auto rayleigh = [&](std::span<const double> x, std::span<const double> mx) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += mx[i] / x[i];
    return acc / static_cast<double>(n);
  };
  auto residual_of = [&](std::span<const double> x, std::span<const double> mx, double lambda) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(mx[i] - lambda * x[i]));
    return r;
  };

  double step = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    detail::multiply(m, v, mv);
    next = mv;
    detail::normalize_sum(next);
    step = 0.0;
    for (std::size_t i = 0; i < n; ++i) step = std::max(step, std::abs(next[i] - v[i]));
    v.swap(next);
    if (step < opts.tol) {
      detail::multiply(m, v, mv);
      const double lambda = rayleigh(v, mv);
      const double residual = residual_of(v, mv, lambda);
      if (residual <= opts.tol) return EigenSolution{lambda, v, it, residual};
    }
  }
  throw ConvergenceError(opts.max_iter, step);
}

/// Power iteration from the uniform vector.
inline EigenSolution principal_eigen(const PCMatrix& m, SolverOptions opts = {}) {
  const std::vector<double> start(m.size(), 1.0);
  return principal_eigen(m, start, opts);
}

inline RankingVector rescale(std::span<const double> vector) {
  RankingVector r{std::vector<double>(vector.begin(), vector.end()), RankingMethod::eigenvector};
  detail::normalize_sum(r.weights);
  return r;
}

inline RankingVector rescale(const EigenSolution& sol) { return rescale(sol.vector); }

/// Row geometric means, rescaled to unit sum.
inline RankingVector geometric_mean_ranking(const PCMatrix& m) {
  const std::size_t n = m.size();
  RankingVector r{std::vector<double>(n), RankingMethod::geometric_mean};
  for (std::size_t i = 0; i < n; ++i) {
    // Sum of logs; the plain product can overflow for n = 64.
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(m(i, j));
    r.weights[i] = std::exp(log_sum / static_cast<double>(n));
  }
  detail::normalize_sum(r.weights);
  return r;
}

inline RankingVector derive_ranking(const PCMatrix& m, RankingMethod method, SolverOptions opts = {}) {
  if (method == RankingMethod::geometric_mean) return geometric_mean_ranking(m);
  return rescale(principal_eigen(m, opts));
}

}  // namespace pcdisc
