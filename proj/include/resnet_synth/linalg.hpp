#pragma once

// Small dense vectors and a row-compressed matrix. Zero weights are never
// stored, so a product only ever sums the nonzero terms of a row in
// increasing column order. Two matrices that agree on their nonzeros
// therefore give bit-identical products, whatever their shapes.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resnet_synth/error.hpp"

namespace resnet_synth {

// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

inline Vector add(std::span<const double> a, std::span<const double> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

class Matrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, 1.0});
    for (std::size_t i = 0; i <= n; ++i) m.row_start_[i] = i;
    return m;
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw Error(ErrorKind::dimension_mismatch, "matrix row " + std::to_string(i) +
                                                       " has " + std::to_string(rows[i].size()) +
                                                       " columns, expected " + std::to_string(cols));
      }
      for (std::size_t j = 0; j < cols; ++j) {
        if (rows[i][j] != 0.0) m.entries_.push_back({j, rows[i][j]});
      }
      m.row_start_[i + 1] = m.entries_.size();
    }
    return m;
  }

  // Triplets may arrive in any order; duplicates are rejected.
  static Matrix from_triplets(std::size_t rows, std::size_t cols,
                              std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> triplets) {
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Matrix m(rows, cols);
    std::size_t row = 0;
    for (std::size_t t = 0; t < triplets.size(); ++t) {
      auto [i, j] = triplets[t].first;
      if (i >= rows || j >= cols) {
        throw Error(ErrorKind::dimension_mismatch, "matrix entry (" + std::to_string(i) + "," +
                                                       std::to_string(j) + ") out of range");
      }
      if (t > 0 && triplets[t - 1].first == triplets[t].first) {
        throw Error(ErrorKind::invalid_input, "duplicate matrix entry (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ")");
      }
      while (row < i) m.row_start_[++row] = m.entries_.size();
      if (triplets[t].second != 0.0) m.entries_.push_back({j, triplets[t].second});
    }
    while (row < rows) m.row_start_[++row] = m.entries_.size();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }

  std::span<const Entry> row(std::size_t i) const {
    return {entries_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
  }

  double at(std::size_t i, std::size_t j) const {
    for (const Entry& e : row(i)) {
      if (e.col == j) return e.value;
    }
    return 0.0;
  }

  Vector row_dense(std::size_t i) const {
    Vector out(cols_, 0.0);
    for (const Entry& e : row(i)) out[e.col] = e.value;
    return out;
  }

  // y = M x, summing each row's stored entries in column order.
  Vector multiply(std::span<const double> x) const {
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (const Entry& e : row(i)) s += e.value * x[e.col];
      y[i] = s;
    }
    return y;
  }

  bool is_identity() const {
    if (rows_ != cols_ || entries_.size() != rows_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      auto r = row(i);
      if (r.size() != 1 || r[0].col != i || r[0].value != 1.0) return false;
    }
    return true;
  }

  bool all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Entry& e) { return std::isfinite(e.value); });
  }

  // Places `other` with its top-left corner at (row_offset, col_offset).
  // Used to assemble block-diagonal and stacked matrices.
  static Matrix assemble(std::size_t rows, std::size_t cols,
                         const std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Matrix*>>& parts) {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> triplets;
    for (const auto& [offset, part] : parts) {
      for (std::size_t i = 0; i < part->rows(); ++i) {
        for (const Entry& e : part->row(i)) {
          triplets.push_back({{offset.first + i, offset.second + e.col}, e.value});
        }
      }
    }
    return from_triplets(rows, cols, std::move(triplets));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.row_start_ != b.row_start_) return false;
    for (std::size_t t = 0; t < a.entries_.size(); ++t) {
      if (a.entries_[t].col != b.entries_[t].col || a.entries_[t].value != b.entries_[t].value) return false;
    }
    return true;
  }

  // Mutable access for fault-injection in tests and tools; inserts if absent.
  void set(std::size_t i, std::size_t j, double value) {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> triplets;
    bool placed = false;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (const Entry& e : row(r)) {
        if (r == i && e.col == j) {
          triplets.push_back({{r, e.col}, value});
          placed = true;
        } else {
          triplets.push_back({{r, e.col}, e.value});
        }
      }
    }
    if (!placed) triplets.push_back({{i, j}, value});
    *this = from_triplets(rows_, cols_, std::move(triplets));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<Entry> entries_;
};

}  // namespace resnet_synth
