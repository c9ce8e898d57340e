#pragma once

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pcdisc/pc_matrix.hpp"

namespace pcdisc::testing {

/// Four-concept judgments from the worked example (Bana e Costa & Vansnick).
inline PCMatrix example_matrix() {
  const std::array<UpperEntry, 6> upper{{{0, 1, 2.5}, {0, 2, 4.0}, {0, 3, 9.5},
                                         {1, 2, 3.0}, {1, 3, 6.5}, {2, 3, 5.0}}};
  return PCMatrix::from_upper_triangle(4, upper);
}

/// The same matrix after the expert revised m34 to 3 and m12 to 1.5.
inline PCMatrix revised_matrix() {
  const std::array<UpperEntry, 6> upper{{{0, 1, 1.5}, {0, 2, 4.0}, {0, 3, 9.5},
                                         {1, 2, 3.0}, {1, 3, 6.5}, {2, 3, 3.0}}};
  return PCMatrix::from_upper_triangle(4, upper);
}

inline constexpr const char* kExampleCsv =
    "1,2.5,4,9.5\n"
    "0.4,1,3,6.5\n"
    "0.25,0.333333,1,5\n"
    "0.105263,0.153846,0.2,1\n";

inline constexpr const char* kRevisedCsv =
    "1,1.5,4,9.5\n"
    "1/1.5,1,3,6.5\n"
    "1/4,1/3,1,3\n"
    "1/9.5,1/6.5,1/3,1\n";

/// Reciprocal matrix with upper entries log-uniform in [1/9, 9].
inline PCMatrix random_reciprocal(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_entry(-std::log(9.0), std::log(9.0));
  std::vector<UpperEntry> upper;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) upper.push_back({i, j, std::exp(log_entry(rng))});
  }
  return PCMatrix::from_upper_triangle(n, upper);
}

/// Fixed-seed corpus: `count` matrices cycling n through 3..7.
inline std::vector<PCMatrix> random_corpus(std::size_t count, std::uint64_t seed = 20240521) {
  std::mt19937_64 rng(seed);
  std::vector<PCMatrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_reciprocal(3 + k % 5, rng));
  return out;
}

inline std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.05, 20.0);
  std::vector<double> out(n);
  for (double& x : out) x = w(rng);
  return out;
}

/// Largest real root of det(M - x I) for a 3x3 matrix, found by bracketing
/// from the max row sum (an upper bound on the spectral radius of a
/// positive matrix) and bisecting. Independent of power iteration.
inline double dominant_root_3x3(const PCMatrix& m) {
  const double tr = m(0, 0) + m(1, 1) + m(2, 2);
  const double minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                        (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  auto p = [&](double x) { return ((x - tr) * x + minors) * x - det; };

  double hi = 0.0;
  for (std::size_t i = 0; i < 3; ++i) hi = std::max(hi, m(i, 0) + m(i, 1) + m(i, 2));
  hi += 1.0;
  const int steps = 200000;
  const double h = hi / steps;
  double lo = hi;
  while (lo > 0.0 && p(lo) > 0.0) lo -= h;
  double upper = lo + h;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + upper);
    (p(mid) > 0.0 ? upper : lo) = mid;
  }
  return 0.5 * (lo + upper);
}

}  // namespace pcdisc::testing
