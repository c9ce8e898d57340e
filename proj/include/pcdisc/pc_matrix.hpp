#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcdisc {

inline constexpr std::size_t kMinDimension = 2;
inline constexpr std::size_t kMaxDimension = 64;

/// Largest accepted |m_ij * m_ji - 1| for user input. Admits reciprocals
/// typed to six decimal places (0.105263 for 1/9.5).
inline constexpr double kReciprocityTolerance = 1e-5;

/// Tolerance on |m_ij * m_jk * m_ki - 1| for the consistency verdict.
inline constexpr double kTriadTolerance = 1e-9;

/// Input rejected by validation or parsing. Coordinates are 1-based; zero
/// means "not tied to a cell".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string reason, std::size_t row = 0, std::size_t col = 0)
      : std::runtime_error(format(reason, row, col)),
        reason_(std::move(reason)),
        row_(row),
        col_(col) {}

  const std::string& reason() const noexcept { return reason_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  static std::string format(const std::string& reason, std::size_t row, std::size_t col) {
    if (row == 0 && col == 0) return reason;
    return "(" + std::to_string(row) + "," + std::to_string(col) + "): " + reason;
  }

  std::string reason_;
  std::size_t row_;
  std::size_t col_;
};

/// One judgment of the upper triangle, 0-based, i < j.
struct UpperEntry {
  std::size_t i;
  std::size_t j;
  double value;
};

/// Positive reciprocal pairwise-comparison matrix with concept labels.
///
/// Immutable once built. Every constructor validates and canonicalizes so
/// that m_ji == 1.0 / m_ij holds bit-exactly for i < j. Indices in the C++
/// API are 0-based; text formats and reports use 1-based coordinates.
class PCMatrix {
 public:
  /// Validates a dense row grid. Entries within kReciprocityTolerance of
  /// reciprocal are accepted and the lower triangle is replaced with exact
  /// reciprocals of the upper one.
  static PCMatrix from_rows(const std::vector<std::vector<double>>& rows,
                            std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    check_dimension(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) {
        throw ValidationError("matrix is not square: row has " + std::to_string(rows[r].size()) +
                                  " entries, expected " + std::to_string(n),
                              r + 1, 0);
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const double v = rows[r][c];
        if (!std::isfinite(v) || v <= 0.0) {
          throw ValidationError("entry must be a positive finite number", r + 1, c + 1);
        }
        if (r == c && v != 1.0) {
          throw ValidationError("diagonal entry must equal 1", r + 1, c + 1);
        }
      }
    }
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0; c < r; ++c) {
        if (std::abs(rows[r][c] * rows[c][r] - 1.0) > kReciprocityTolerance) {
          throw ValidationError("reciprocity violated: m_ij * m_ji = " +
                                    std::to_string(rows[r][c] * rows[c][r]),
                                r + 1, c + 1);
        }
      }
    }
    PCMatrix m(n, std::move(labels));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) m.assign(r, c, rows[r][c]);
    }
    return m;
  }

  /// Builds the matrix from its n(n-1)/2 upper-triangle judgments.
  static PCMatrix from_upper_triangle(std::size_t n, std::span<const UpperEntry> upper,
                                      std::vector<std::string> labels = {}) {
    check_dimension(n);
    if (upper.size() != n * (n - 1) / 2) {
      throw ValidationError("expected " + std::to_string(n * (n - 1) / 2) +
                            " upper-triangle values, got " + std::to_string(upper.size()));
    }
    PCMatrix m(n, std::move(labels));
    std::vector<bool> seen(n * n, false);
    for (const auto& e : upper) {
      if (e.i >= n || e.j >= n || e.i >= e.j) {
        throw ValidationError("pair is not in the strict upper triangle", e.i + 1, e.j + 1);
      }
      if (seen[e.i * n + e.j]) throw ValidationError("duplicate pair", e.i + 1, e.j + 1);
      if (!std::isfinite(e.value) || e.value <= 0.0) {
        throw ValidationError("entry must be a positive finite number", e.i + 1, e.j + 1);
      }
      seen[e.i * n + e.j] = true;
      m.assign(e.i, e.j, e.value);
    }
    return m;
  }

  /// Consistent matrix m_ij = w_i / w_j.
  static PCMatrix from_weights(std::span<const double> weights, std::vector<std::string> labels = {}) {
    const std::size_t n = weights.size();
    check_dimension(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
        throw ValidationError("weight must be a positive finite number", i + 1, 0);
      }
    }
    PCMatrix m(n, std::move(labels));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) m.assign(i, j, weights[i] / weights[j]);
    }
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    }
    return out;
  }

  /// Copy with m_ij = v and m_ji = 1/v.
  [[nodiscard]] PCMatrix with_entry(std::size_t i, std::size_t j, double v) const {
    if (i >= n_ || j >= n_) throw ValidationError("index out of range", i + 1, j + 1);
    if (i == j) throw ValidationError("diagonal entries are fixed at 1", i + 1, j + 1);
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError("entry must be a positive finite number", i + 1, j + 1);
    }
    PCMatrix out = *this;
    out.data_[i * n_ + j] = v;
    out.data_[j * n_ + i] = 1.0 / v;
    return out;
  }

  friend bool operator==(const PCMatrix&, const PCMatrix&) = default;

 private:
  PCMatrix(std::size_t n, std::vector<std::string> labels) : n_(n), data_(n * n, 1.0) {
    if (labels.empty()) {
      labels.reserve(n);
      for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i + 1));
    } else if (labels.size() != n) {
      throw ValidationError("expected " + std::to_string(n) + " labels, got " +
                            std::to_string(labels.size()));
    }
    labels_ = std::move(labels);
  }

  static void check_dimension(std::size_t n) {
    if (n < kMinDimension || n > kMaxDimension) {
      throw ValidationError("dimension must be between " + std::to_string(kMinDimension) + " and " +
                            std::to_string(kMaxDimension) + ", got " + std::to_string(n));
    }
  }

  void assign(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = 1.0 / v;
  }

  std::size_t n_;
  std::vector<double> data_;
  std::vector<std::string> labels_;
};

inline PCMatrix set_entry(const PCMatrix& m, std::size_t i, std::size_t j, double v) {
  return m.with_entry(i, j, v);
}

struct TriadReport {
  std::optional<std::array<std::size_t, 3>> worst_triad;  // 0-based, oriented so worst_product >= 1; empty for n = 2
  double worst_product = 1.0;
  bool is_consistent = true;
};

/// Exhaustive scan of all C(n,3) triads for the cycle product
/// m_ij * m_jk * m_ki farthest from 1. Both orientations of a triad are
/// considered (they give p and 1/p), so the reported product is >= 1.
inline TriadReport consistency_scan(const PCMatrix& m) {
  TriadReport report;
  const std::size_t n = m.size();
  double worst = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double forward = m(i, j) * m(j, k) * m(k, i);
        const double backward = m(i, k) * m(k, j) * m(j, i);
        const bool use_forward = forward >= backward;
        const double product = use_forward ? forward : backward;
        if (product - 1.0 > worst) {
          worst = product - 1.0;
          report.worst_triad = use_forward ? std::array{i, j, k} : std::array{i, k, j};
          report.worst_product = product;
        }
      }
    }
  }
  if (worst < 0.0) return report;  // n == 2
  report.is_consistent = std::abs(report.worst_product - 1.0) <= kTriadTolerance;
  return report;
}

}  // namespace pcdisc
