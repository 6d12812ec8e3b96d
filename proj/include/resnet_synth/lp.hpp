#pragma once

// Two-phase revised simplex for
//
//   minimize c'z  subject to  A z = b,  z >= 0
//
// with Bland's rule for pivot selection (no cycling on degenerate problems).
// The separation engine solves the dual of its max-margin program here: the
// dual has few rows and many columns, so the basis is tiny. It is refactored
// from the original data at every iteration instead of being updated in
// place, which keeps round-off from piling up across pivots. The optimal
// simplex multipliers y (with A'y <= c) are returned alongside z.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "resnet_synth/linalg.hpp"

namespace resnet_synth::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
  Status status = Status::infeasible;
  double objective = 0.0;
  Vector primal;  // z
  Vector dual;    // y
};

struct Options {
  double pivot_tolerance = 1e-9;
  double reduced_cost_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  double drive_out_tolerance = 1e-7;
  std::size_t max_iterations = 100000;
};

namespace detail {

// Dense LU with partial pivoting, m x m, row-major.
class Lu {
 public:
  explicit Lu(std::vector<double> a, std::size_t m) : m_(m), a_(std::move(a)), perm_(m) {
    for (std::size_t i = 0; i < m_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m_; ++i) {
        if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
      }
      if (at(p, k) == 0.0) {
        singular_ = true;
        return;
      }
      if (p != k) {
        for (std::size_t j = 0; j < m_; ++j) std::swap(at(p, j), at(k, j));
        std::swap(perm_[p], perm_[k]);
      }
      for (std::size_t i = k + 1; i < m_; ++i) {
        at(i, k) /= at(k, k);
        for (std::size_t j = k + 1; j < m_; ++j) at(i, j) -= at(i, k) * at(k, j);
      }
    }
  }

  bool singular() const { return singular_; }

  // Solves B x = rhs.
  Vector solve(const Vector& rhs) const {
    Vector x(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = rhs[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = m_; i-- > 0;) {
      double s = x[i];
      for (std::size_t j = i + 1; j < m_; ++j) s -= at(i, j) * x[j];
      x[i] = s / at(i, i);
    }
    return x;
  }

  // Solves B' y = rhs.
  Vector solve_transposed(const Vector& rhs) const {
    Vector u(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = rhs[i];
      for (std::size_t j = 0; j < i; ++j) s -= at(j, i) * u[j];
      u[i] = s / at(i, i);
    }
    Vector v(m_);
    for (std::size_t i = m_; i-- > 0;) {
      double s = u[i];
      for (std::size_t j = i + 1; j < m_; ++j) s -= at(j, i) * v[j];
      v[i] = s;
    }
    Vector y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[perm_[i]] = v[i];
    return y;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return a_[i * m_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }

  std::size_t m_;
  std::vector<double> a_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

// Columns [0, n) are structural, [n, n + m) artificial (unit vectors).
// Rows with negative rhs are negated up front.
class Problem {
 public:
  Problem(const std::vector<Vector>& a, const Vector& b, std::size_t n)
      : m_(a.size()), n_(n), a_(a), b_(b), flipped_(a.size(), false), basis_(a.size()) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (b_[i] < 0.0) {
        for (double& v : a_[i]) v = -v;
        b_[i] = -b_[i];
        flipped_[i] = true;
      }
      basis_[i] = n_ + i;
    }
  }

  double entry(std::size_t i, std::size_t j) const { return j < n_ ? a_[i][j] : (j - n_ == i ? 1.0 : 0.0); }

  Vector column(std::size_t j) const {
    Vector c(m_);
    for (std::size_t i = 0; i < m_; ++i) c[i] = entry(i, j);
    return c;
  }

  std::optional<Lu> factor() const {
    std::vector<double> dense(m_ * m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < m_; ++k) dense[i * m_ + k] = entry(i, basis_[k]);
    }
    Lu lu(std::move(dense), m_);
    if (lu.singular()) return std::nullopt;
    return lu;
  }

  // Bland's-rule iterations over columns [0, allowed) with costs `c`
  // (indexed by column; missing entries are zero).
  Status run(const Vector& c, std::size_t allowed, const Options& opt, std::size_t& iterations) {
    auto cost = [&](std::size_t j) { return j < c.size() ? c[j] : 0.0; };
    while (true) {
      if (iterations++ > opt.max_iterations) return Status::iteration_limit;
      auto lu = factor();
      if (!lu) return Status::iteration_limit;
      Vector cb(m_);
      for (std::size_t k = 0; k < m_; ++k) cb[k] = cost(basis_[k]);
      Vector y = lu->solve_transposed(cb);

      std::vector<bool> basic(n_ + m_, false);
      for (std::size_t k : basis_) basic[k] = true;
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (basic[j]) continue;
        double d = cost(j);
        for (std::size_t i = 0; i < m_; ++i) d -= y[i] * entry(i, j);
        if (d < -opt.reduced_cost_tolerance) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return Status::optimal;

      Vector xb = lu->solve(b_);
      Vector dir = lu->solve(column(enter));
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m_; ++k) {
        if (dir[k] <= opt.pivot_tolerance) continue;
        double ratio = std::max(xb[k], 0.0) / dir[k];
        if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave < m_ && basis_[k] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = k;
        }
      }
      if (leave == m_) return Status::unbounded;
      basis_[leave] = enter;
    }
  }

  // Swaps zero-level artificials for structural columns where the basis
  // stays well conditioned.
  void drive_out_artificials(const Options& opt) {
    for (std::size_t k = 0; k < m_; ++k) {
      if (basis_[k] < n_) continue;
      auto lu = factor();
      if (!lu) return;
      Vector unit(m_, 0.0);
      unit[k] = 1.0;
      Vector row = lu->solve_transposed(unit);  // row k of B^-1
      std::vector<bool> basic(n_ + m_, false);
      for (std::size_t j : basis_) basic[j] = true;
      std::size_t best = n_;
      double best_size = opt.drive_out_tolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic[j]) continue;
        double v = 0.0;
        for (std::size_t i = 0; i < m_; ++i) v += row[i] * entry(i, j);
        if (std::abs(v) > best_size) {
          best_size = std::abs(v);
          best = j;
        }
      }
      if (best < n_) basis_[k] = best;
    }
  }

  Vector basic_values() const {
    auto lu = factor();
    return lu ? lu->solve(b_) : Vector(m_, std::numeric_limits<double>::quiet_NaN());
  }

  std::size_t rows() const { return m_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  bool flipped(std::size_t i) const { return flipped_[i]; }

 private:
  std::size_t m_, n_;
  std::vector<Vector> a_;
  Vector b_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// `a` is row-major with one Vector per equality constraint.
inline Result solve_standard_form(const std::vector<Vector>& a, const Vector& b, const Vector& c,
                                  const Options& opt = {}) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  detail::Problem prob(a, b, n);
  std::size_t iterations = 0;

  // Phase 1: minimize the sum of artificials.
  Vector phase1(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1.0;
  Status s = prob.run(phase1, n + m, opt, iterations);
  if (s == Status::iteration_limit) return {s, 0.0, {}, {}};
  Vector xb = prob.basic_values();
  double infeasibility = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (prob.basis()[k] >= n) infeasibility += std::abs(xb[k]);
  }
  if (!(infeasibility <= opt.feasibility_tolerance)) return {Status::infeasible, 0.0, {}, {}};

  prob.drive_out_artificials(opt);

  // Phase 2 over structural columns only.
  s = prob.run(c, n, opt, iterations);
  if (s != Status::optimal) return {s, 0.0, {}, {}};

  auto lu = prob.factor();
  if (!lu) return {Status::iteration_limit, 0.0, {}, {}};
  Result r;
  r.status = Status::optimal;
  r.primal.assign(n, 0.0);
  xb = prob.basic_values();
  Vector cb(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t j = prob.basis()[k];
    if (j < n) {
      r.primal[j] = std::max(xb[k], 0.0);
      cb[k] = c[j];
    }
  }
  r.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) r.objective += c[j] * r.primal[j];
  Vector y = lu->solve_transposed(cb);
  r.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) r.dual[i] = prob.flipped(i) ? -y[i] : y[i];
  return r;
}

}  // namespace resnet_synth::lp
