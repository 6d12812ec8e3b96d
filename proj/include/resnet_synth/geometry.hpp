#pragma once

// Separation certificates and polytope covers.
//
// A hyperplane (w, c) splits space into the open positive side w.x + c > 0,
// where a ReLU unit on it fires, and the closed zero side w.x + c <= 0. A
// certificate proves that a "pass" set lies on the zero side and a "kill"
// set lies at least `margin` into the positive side.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "resnet_synth/error.hpp"
#include "resnet_synth/linalg.hpp"
#include "resnet_synth/lp.hpp"

namespace resnet_synth {

struct LabeledDataset {
  std::vector<Vector> points;
  std::vector<int> labels;  // 1..k
  std::size_t n = 0;
  int k = 0;

  std::size_t size() const { return points.size(); }
};

// Returns human-readable problems; empty means valid. Row numbers are 1-based
// positions in `points`.
inline std::vector<std::string> dataset_problems(const LabeledDataset& d, bool require_two_categories = true) {
  std::vector<std::string> problems;
  if (d.points.size() != d.labels.size()) {
    problems.push_back("points/labels length mismatch: " + std::to_string(d.points.size()) + " vs " +
                       std::to_string(d.labels.size()));
    return problems;
  }
  if (d.n == 0) problems.push_back("dimension n must be positive");
  if (require_two_categories && d.k < 2) problems.push_back("need k >= 2 categories, got " + std::to_string(d.k));
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (d.points[i].size() != d.n) {
      problems.push_back("row " + std::to_string(i + 1) + ": expected " + std::to_string(d.n) + " coordinates, got " +
                         std::to_string(d.points[i].size()));
    } else if (!all_finite(d.points[i])) {
      problems.push_back("row " + std::to_string(i + 1) + ": non-finite coordinate");
    }
    if (d.labels[i] < 1 || d.labels[i] > d.k) {
      problems.push_back("row " + std::to_string(i + 1) + ": label " + std::to_string(d.labels[i]) +
                         " outside 1.." + std::to_string(d.k));
    }
  }
  if (!problems.empty()) return problems;
  std::vector<std::size_t> order(d.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d.points[a] < d.points[b]; });
  for (std::size_t t = 1; t < order.size(); ++t) {
    if (d.points[order[t]] == d.points[order[t - 1]]) {
      std::size_t a = std::min(order[t], order[t - 1]), b = std::max(order[t], order[t - 1]);
      problems.push_back("duplicate point at rows " + std::to_string(a + 1) + " and " + std::to_string(b + 1));
    }
  }
  return problems;
}

inline void check_dataset(const LabeledDataset& d, bool require_two_categories = true) {
  auto problems = dataset_problems(d, require_two_categories);
  if (problems.empty()) return;
  std::string msg = "invalid dataset:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw Error(ErrorKind::invalid_input, msg);
}

struct Hyperplane {
  Vector w;
  double c = 0.0;

  double value(std::span<const double> x) const { return dot(w, x) + c; }
};

struct SeparationCertificate {
  Hyperplane plane;
  double margin = 0.0;  // min over kill of w.x + c

  // Direct substitution over both finite sets.
  bool holds(const std::vector<Vector>& pass, const std::vector<Vector>& kill) const {
    for (const Vector& x : pass) {
      if (plane.value(x) > 0.0) return false;
    }
    for (const Vector& x : kill) {
      if (plane.value(x) < margin) return false;
    }
    return margin > 0.0;
  }
};

inline constexpr double kMinSeparationMargin = 1e-6;

// Max-margin one-sided separation with |w|_inf <= 1. The LP is solved in its
// dual form; only the direction w is taken from the solver. The offset is then
// placed midway between the two sets and the margin is recomputed by
// substitution, so a certificate is only emitted if it verifies.
inline std::optional<SeparationCertificate> separate(const std::vector<Vector>& pass,
                                                     const std::vector<Vector>& kill, std::size_t n) {
  if (pass.empty() || kill.empty()) throw Error(ErrorKind::invalid_input, "separate: empty point set");
  for (const auto* set : {&pass, &kill}) {
    for (const Vector& x : *set) {
      if (x.size() != n) throw Error(ErrorKind::dimension_mismatch, "separate: point has mixed dimension");
      if (!all_finite(x)) throw Error(ErrorKind::invalid_input, "separate: non-finite coordinate");
    }
  }

  // Primal variables v = (w_1..w_n, c, t); maximize t subject to
  //   pass:  w.x + c <= 0          kill:  -w.x - c + t <= 0
  //   bounds: w_i <= 1, -w_i <= 1.
  // Dual: minimize h'z s.t. G'z = e_t, z >= 0, one column per primal row.
  // w is invariant under translating and uniformly scaling both sets, so
  // the LP sees centred, unit-scale points; this keeps the tableau tame.
  Vector centre(n, 0.0);
  for (const auto* set : {&pass, &kill}) {
    for (const Vector& x : *set) {
      for (std::size_t i = 0; i < n; ++i) centre[i] += x[i];
    }
  }
  for (double& v : centre) v /= static_cast<double>(pass.size() + kill.size());
  double spread = 0.0;
  for (const auto* set : {&pass, &kill}) {
    for (const Vector& x : *set) {
      for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(x[i] - centre[i]));
    }
  }
  if (!(spread > 0.0)) return std::nullopt;
  auto normalized = [&](const Vector& x) {
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - centre[i]) / spread;
    return y;
  };

  const std::size_t rows = n + 2;
  const std::size_t cols = pass.size() + kill.size() + 2 * n;
  std::vector<Vector> a(rows, Vector(cols, 0.0));
  Vector cost(cols, 0.0);
  std::size_t col = 0;
  for (const Vector& p : pass) {
    Vector x = normalized(p);
    for (std::size_t i = 0; i < n; ++i) a[i][col] = x[i];
    a[n][col] = 1.0;
    ++col;
  }
  for (const Vector& k : kill) {
    Vector x = normalized(k);
    for (std::size_t i = 0; i < n; ++i) a[i][col] = -x[i];
    a[n][col] = -1.0;
    a[n + 1][col] = 1.0;
    ++col;
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[i][col] = 1.0;
    cost[col++] = 1.0;
    a[i][col] = -1.0;
    cost[col++] = 1.0;
  }
  Vector b(rows, 0.0);
  b[n + 1] = 1.0;

  lp::Result r = lp::solve_standard_form(a, b, cost);
  if (r.status != lp::Status::optimal) return std::nullopt;

  Vector w(r.dual.begin(), r.dual.begin() + static_cast<std::ptrdiff_t>(n));
  double scale = max_abs(w);
  if (!(scale > 1e-12)) return std::nullopt;
  for (double& v : w) v /= scale;

  double pass_max = -std::numeric_limits<double>::infinity();
  double kill_min = std::numeric_limits<double>::infinity();
  for (const Vector& x : pass) pass_max = std::max(pass_max, dot(w, x));
  for (const Vector& x : kill) kill_min = std::min(kill_min, dot(w, x));
  if (!(kill_min - pass_max > 2.0 * kMinSeparationMargin)) return std::nullopt;

  SeparationCertificate cert;
  cert.plane = {std::move(w), -0.5 * (pass_max + kill_min)};
  cert.margin = std::numeric_limits<double>::infinity();
  for (const Vector& x : kill) cert.margin = std::min(cert.margin, cert.plane.value(x));
  for (const Vector& x : pass) {
    if (cert.plane.value(x) > 0.0) return std::nullopt;
  }
  if (!(cert.margin >= kMinSeparationMargin)) return std::nullopt;
  return cert;
}

struct Facet {
  Hyperplane plane;
  double gamma = 0.0;  // strict-interior margin for this facet
};

struct Box {
  Vector lower;
  Vector upper;
};

// Strict interior: w.x + c <= -gamma for every facet. Covers built here are
// axis-aligned boxes and keep their outer bounds in `box`.
struct Polytope {
  std::vector<Facet> facets;
  std::optional<Box> box;
};

enum class Membership { strictly_inside, outside };

inline Membership polytope_contains(const Polytope& p, std::span<const double> x) {
  for (const Facet& f : p.facets) {
    if (f.plane.w.size() != x.size()) {
      throw Error(ErrorKind::dimension_mismatch, "polytope_contains: point dimension " + std::to_string(x.size()) +
                                                     " != facet dimension " + std::to_string(f.plane.w.size()));
    }
    if (!(f.plane.value(x) <= -f.gamma)) return Membership::outside;
  }
  return Membership::strictly_inside;
}

// If the facet normal is +-e_j, returns j and the sign.
inline std::optional<std::pair<std::size_t, double>> axis_of(const Hyperplane& h) {
  std::optional<std::pair<std::size_t, double>> found;
  for (std::size_t j = 0; j < h.w.size(); ++j) {
    if (h.w[j] == 0.0) continue;
    if (found || (h.w[j] != 1.0 && h.w[j] != -1.0)) return std::nullopt;
    found = {j, h.w[j]};
  }
  return found;
}

struct PolytopeCover {
  int target_label = 0;
  std::vector<Polytope> polytopes;
  std::vector<std::vector<std::size_t>> members;  // dataset indices strictly inside each polytope
  std::size_t dataset_size = 0;
};

enum class CoverStrategy { per_point, greedy };

namespace detail {

inline double chebyshev(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Picks gamma in [r/4, 3r/4] as far as possible from every value in
// `offsets`, so no data point sits on or near the inner boundary of a facet.
inline double facet_gamma(std::vector<double> offsets, double r) {
  const double lo = 0.25 * r, hi = 0.75 * r;
  std::vector<double> in;
  for (double v : offsets) {
    if (v >= lo && v <= hi) in.push_back(v);
  }
  if (in.empty()) return 0.5 * r;
  std::sort(in.begin(), in.end());
  std::vector<double> candidates{lo, hi};
  for (std::size_t i = 0; i + 1 < in.size(); ++i) candidates.push_back(0.5 * (in[i] + in[i + 1]));
  double best = 0.5 * r, best_gap = -1.0;
  for (double c : candidates) {
    double gap = std::numeric_limits<double>::infinity();
    for (double v : in) gap = std::min(gap, std::abs(v - c));
    if (gap > best_gap || (gap == best_gap && std::abs(c - 0.5 * r) < std::abs(best - 0.5 * r))) {
      best = c;
      best_gap = gap;
    }
  }
  return best;
}

// Box with outer bounds [lo - r, hi + r] around the member extent. Facets are
// ordered upper-then-lower per coordinate.
inline Polytope make_box(const Vector& member_lo, const Vector& member_hi, double r, const LabeledDataset& d) {
  const std::size_t n = member_lo.size();
  Polytope p;
  p.box = Box{Vector(n), Vector(n)};
  for (std::size_t j = 0; j < n; ++j) {
    double upper = member_hi[j] + r, lower = member_lo[j] - r;
    p.box->lower[j] = lower;
    p.box->upper[j] = upper;
    std::vector<double> up_off, low_off;
    for (const Vector& q : d.points) {
      up_off.push_back(upper - q[j]);
      low_off.push_back(q[j] - lower);
    }
    Vector e(n, 0.0);
    e[j] = 1.0;
    p.facets.push_back({{e, -upper}, facet_gamma(up_off, r)});
    e[j] = -1.0;
    p.facets.push_back({{e, lower}, facet_gamma(low_off, r)});
  }
  return p;
}

inline std::vector<std::size_t> points_inside(const Polytope& p, const LabeledDataset& d) {
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (polytope_contains(p, d.points[i]) == Membership::strictly_inside) in.push_back(i);
  }
  return in;
}

}  // namespace detail

inline PolytopeCover build_cover(const LabeledDataset& d, int target, CoverStrategy strategy) {
  check_dataset(d, false);
  const std::size_t n = d.n;
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.labels[i] == target) targets.push_back(i);
  }
  if (targets.empty()) {
    throw Error(ErrorKind::invalid_input, "build_cover: target label " + std::to_string(target) + " absent");
  }

  // Per-point boxes: half-width r = min(delta/4, 1) with delta the
  // Chebyshev distance to the nearest other point.
  struct Piece {
    Vector lo, hi;
    double r;
  };
  std::vector<Piece> pieces;
  for (std::size_t i : targets) {
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < d.size(); ++q) {
      if (q != i) delta = std::min(delta, detail::chebyshev(d.points[i], d.points[q]));
    }
    double r = std::min(delta / 4.0, 1.0);
    pieces.push_back({d.points[i], d.points[i], r});
  }

  PolytopeCover cover;
  cover.target_label = target;
  cover.dataset_size = d.size();

  if (strategy == CoverStrategy::greedy) {
    auto admissible = [&](const Polytope& p) {
      for (std::size_t q = 0; q < d.size(); ++q) {
        if (d.labels[q] != target && polytope_contains(p, d.points[q]) == Membership::strictly_inside) return false;
      }
      return true;
    };
    bool merged = true;
    while (merged) {
      merged = false;
      for (std::size_t a = 0; a < pieces.size() && !merged; ++a) {
        for (std::size_t b = a + 1; b < pieces.size(); ++b) {
          Piece m{Vector(n), Vector(n), std::min(pieces[a].r, pieces[b].r)};
          for (std::size_t j = 0; j < n; ++j) {
            m.lo[j] = std::min(pieces[a].lo[j], pieces[b].lo[j]);
            m.hi[j] = std::max(pieces[a].hi[j], pieces[b].hi[j]);
          }
          if (!admissible(detail::make_box(m.lo, m.hi, m.r, d))) continue;
          pieces[a] = std::move(m);
          pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
          break;
        }
      }
    }
  }

  for (const Piece& piece : pieces) {
    Polytope p = detail::make_box(piece.lo, piece.hi, piece.r, d);
    cover.members.push_back(detail::points_inside(p, d));
    cover.polytopes.push_back(std::move(p));
  }
  return cover;
}

struct CoverViolation {
  enum class Kind { coverage, containment } kind;
  std::size_t point = 0;
  std::size_t polytope = 0;  // containment only
};

struct CoverReport {
  std::vector<CoverViolation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(CoverViolation::Kind kind) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [&](const CoverViolation& v) { return v.kind == kind; }));
  }
};

inline CoverReport validate_cover(const PolytopeCover& cover, const LabeledDataset& d) {
  CoverReport report;
  for (std::size_t i = 0; i < d.size(); ++i) {
    bool target = d.labels[i] == cover.target_label;
    bool covered = false;
    for (std::size_t p = 0; p < cover.polytopes.size(); ++p) {
      if (polytope_contains(cover.polytopes[p], d.points[i]) != Membership::strictly_inside) continue;
      covered = true;
      if (!target) report.violations.push_back({CoverViolation::Kind::containment, i, p});
    }
    if (target && !covered) report.violations.push_back({CoverViolation::Kind::coverage, i, 0});
  }
  return report;
}

}  // namespace resnet_synth
