#pragma once

// Univariate piecewise-constant approximation with residual blocks.
//
// The network carries the state (t, y). An entry block lifts the scalar input
// t to (t + shift, v_0 + E). Each later block is a 2-identity block whose
// y-gate is a bounded ramp g_i(t) in [0, 1] that switches on at breakpoint
// t_i, weighted by alpha = v_i - v_{i-1}. The elevation E keeps y >= 1 so the
// output ReLU never clips it; the read-off is y - E.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "resnet_synth/core_net.hpp"
#include "resnet_synth/error.hpp"
#include "resnet_synth/linalg.hpp"

namespace resnet_synth {

inline constexpr double kDefaultSteepness = 1e6;

struct PiecewiseConstSpec {
  double lower = 0.0;
  double upper = 1.0;
  std::vector<double> breakpoints;  // N - 1 interior points, strictly increasing
  std::vector<double> levels;       // N values
  double steepness = kDefaultSteepness;
  double elevation = 0.0;

  std::size_t interval_of(double t) const {
    return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin());
  }

  void validate() const {
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
      throw Error(ErrorKind::invalid_input, "approximation domain must be a finite interval with lower < upper");
    }
    if (levels.empty() || breakpoints.size() + 1 != levels.size()) {
      throw Error(ErrorKind::invalid_input, "need N levels and N - 1 breakpoints");
    }
    if (!(steepness > 0.0) || !std::isfinite(steepness)) throw Error(ErrorKind::invalid_input, "steepness must be positive");
    if (!all_finite(levels) || !std::isfinite(elevation)) throw Error(ErrorKind::invalid_input, "non-finite level or elevation");
    double prev = lower;
    for (double t : breakpoints) {
      if (!(t > prev) || !(t < upper)) throw Error(ErrorKind::invalid_input, "breakpoints must increase strictly inside the domain");
      if (t - prev < 1.0 / steepness && prev != lower) {
        throw Error(ErrorKind::invalid_input, "breakpoints closer than the transition width 1/s");
      }
      prev = t;
    }
    double lowest = *std::min_element(levels.begin(), levels.end());
    if (!(elevation > std::abs(lowest) + 1.0)) {
      throw Error(ErrorKind::invalid_input, "elevation must exceed |min level| + 1");
    }
  }
};

inline double default_elevation(const std::vector<double>& levels) {
  return std::abs(*std::min_element(levels.begin(), levels.end())) + 2.0;
}

namespace detail {

inline PiecewiseConstSpec uniform_partition(double lower, double upper, std::size_t levels) {
  if (levels == 0) throw Error(ErrorKind::invalid_input, "level count must be positive");
  if (!(lower < upper)) throw Error(ErrorKind::invalid_input, "samples do not span an interval");
  PiecewiseConstSpec spec;
  spec.lower = lower;
  spec.upper = upper;
  const double h = (upper - lower) / static_cast<double>(levels);
  for (std::size_t i = 1; i < levels; ++i) spec.breakpoints.push_back(lower + h * static_cast<double>(i));
  return spec;
}

}  // namespace detail

// Level i is the mean of the samples falling in interval i.
inline PiecewiseConstSpec fit_pwc(const std::vector<std::pair<double, double>>& samples, std::size_t levels) {
  if (samples.size() < levels || samples.empty()) {
    throw Error(ErrorKind::invalid_input, "need at least N samples for N levels");
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto [x, y] : samples) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw Error(ErrorKind::invalid_input, "non-finite sample");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  PiecewiseConstSpec spec = detail::uniform_partition(lo, hi, levels);
  std::vector<double> sum(levels, 0.0);
  std::vector<std::size_t> count(levels, 0);
  for (auto [x, y] : samples) {
    std::size_t i = std::min(spec.interval_of(x), levels - 1);
    sum[i] += y;
    ++count[i];
  }
  for (std::size_t i = 0; i < levels; ++i) {
    if (count[i] == 0) {
      throw Error(ErrorKind::invalid_input, "interval " + std::to_string(i) + " has no samples; reduce N");
    }
    spec.levels.push_back(sum[i] / static_cast<double>(count[i]));
  }
  spec.elevation = default_elevation(spec.levels);
  return spec;
}

// Level i is f at the midpoint of interval i.
inline PiecewiseConstSpec fit_pwc(const std::function<double(double)>& f, double lower, double upper,
                                  std::size_t levels) {
  PiecewiseConstSpec spec = detail::uniform_partition(lower, upper, levels);
  const double h = (upper - lower) / static_cast<double>(levels);
  for (std::size_t i = 0; i < levels; ++i) spec.levels.push_back(f(lower + h * (static_cast<double>(i) + 0.5)));
  spec.elevation = default_elevation(spec.levels);
  return spec;
}

struct Approximator {
  ResNet net;
  double offset = 0.0;  // E
  double shift = 0.0;   // added to t so the carried coordinate stays >= 0

  double read_off(std::span<const double> output) const { return output[1] - offset; }
  double operator()(double t) const { return read_off(eval_net(net, std::vector<double>{t}).output); }
};

namespace detail {

// g(t) = relu(1 - relu(1 - s (t - t0))) on the y unit; the t unit stays 0.
inline GateNetwork ramp_gate(double breakpoint, double steepness) {
  GateLayer ramp{Matrix::from_rows({{-steepness, 0.0}}, 2), {steepness * breakpoint + 1.0}};
  GateLayer out{Matrix::from_rows({{0.0}, {-1.0}}, 1), {0.0, 1.0}};
  return {{std::move(ramp), std::move(out)}, 2, 2};
}

}  // namespace detail

inline Approximator build_approximator(const PiecewiseConstSpec& spec) {
  spec.validate();
  Approximator a;
  a.offset = spec.elevation;
  a.shift = std::max(0.0, -spec.lower);

  ResNetBlock entry;
  entry.shortcut = Matrix::from_rows({{1.0}, {0.0}}, 1);
  entry.bias = {a.shift, spec.levels.front() + spec.elevation};
  entry.alpha = {0.0, 0.0};
  entry.gate = GateNetwork::closed(1, 2);
  a.net.blocks.push_back(std::move(entry));

  for (std::size_t i = 0; i < spec.breakpoints.size(); ++i) {
    ResNetBlock step;
    step.shortcut = Matrix::identity(2);
    step.identity_shortcut = true;
    step.bias = {0.0, 0.0};
    step.alpha = {0.0, spec.levels[i + 1] - spec.levels[i]};
    step.gate = detail::ramp_gate(spec.breakpoints[i] + a.shift, spec.steepness);
    a.net.blocks.push_back(std::move(step));
  }
  if (a.net.blocks.size() < 2) {
    ResNetBlock hold;
    hold.shortcut = Matrix::identity(2);
    hold.identity_shortcut = true;
    hold.bias = {0.0, 0.0};
    hold.alpha = {0.0, 0.0};
    hold.gate = GateNetwork::closed(2, 2);
    a.net.blocks.push_back(std::move(hold));
  }

  ConstructionTrace& meta = a.net.metadata;
  meta.kind = "approximator";
  meta.read_off_offset = a.offset;
  meta.config["input_shift"] = format_double(a.shift);
  meta.config["levels"] = std::to_string(spec.levels.size());
  meta.domain = std::make_pair(Vector{spec.lower}, Vector{spec.upper});
  return a;
}

// Rebuilds the read-off rule from a network's metadata (e.g. after loading).
inline Approximator approximator_from_net(ResNet net) {
  if (net.metadata.kind != "approximator" || !net.metadata.read_off_offset) {
    throw Error(ErrorKind::invalid_input, "network is not an approximator");
  }
  Approximator a;
  a.offset = *net.metadata.read_off_offset;
  a.net = std::move(net);
  return a;
}

struct ErrorReport {
  double sup_plateau = 0.0;
  double sup_transition = 0.0;
  std::size_t plateau_points = 0;
  std::size_t transition_points = 0;
};

// Uniform grid of `points` samples over [lower, upper]. A grid point is
// plateau-interior when it is at least 1/s from every breakpoint.
inline ErrorReport sup_error_report(const Approximator& approx, const PiecewiseConstSpec& spec,
                                    const std::function<double(double)>& target, std::size_t points) {
  ErrorReport r;
  if (points == 0) return r;
  const double width = 1.0 / spec.steepness;
  for (std::size_t g = 0; g < points; ++g) {
    double t = points == 1 ? spec.lower
                           : spec.lower + (spec.upper - spec.lower) * static_cast<double>(g) /
                                              static_cast<double>(points - 1);
    double err = std::abs(approx(t) - target(t));
    bool plateau = std::all_of(spec.breakpoints.begin(), spec.breakpoints.end(),
                               [&](double b) { return std::abs(t - b) >= width; });
    if (plateau) {
      ++r.plateau_points;
      r.sup_plateau = std::max(r.sup_plateau, err);
    } else {
      ++r.transition_points;
      r.sup_transition = std::max(r.sup_transition, err);
    }
  }
  return r;
}

}  // namespace resnet_synth
