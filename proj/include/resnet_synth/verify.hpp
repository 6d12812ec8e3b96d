#pragma once

// Executable audits over constructed networks. Every dataset-level check is
// exhaustive; only the probe-based checks sample, and the caller supplies the
// probes (generated from recorded seeds).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "resnet_synth/construct.hpp"
#include "resnet_synth/core_net.hpp"
#include "resnet_synth/geometry.hpp"

namespace resnet_synth {

inline constexpr double kZeroTolerance = 1e-9;

enum class Verdict { pass, fail };

struct PointRecord {
  std::size_t id = 0;
  int label = 0;
  Vector readout;
  Verdict verdict = Verdict::fail;
  std::string reason;
  std::optional<ActivationTrace> trace;  // kept for failures
};

struct CheckResult {
  explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_counterexample;

  bool passed() const { return violations == 0; }

  void fail(const std::string& what) {
    if (violations++ == 0) first_counterexample = what;
  }
};

struct VerificationReport {
  double tolerance = kZeroTolerance;
  std::vector<PointRecord> points;
  std::vector<CheckResult> checks;
  std::size_t passed = 0;
  std::size_t failed = 0;

  bool ok() const {
    return failed == 0 && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  }
};

// Own readout coordinate > tau and every other coordinate <= tau. Ties or a
// second firing category are failures, never resolved by index order.
inline std::pair<Verdict, std::string> classify_readout(const Vector& readout, int label, double tau) {
  if (label < 1 || static_cast<std::size_t>(label) > readout.size()) {
    return {Verdict::fail, "label " + std::to_string(label) + " has no readout unit"};
  }
  const std::size_t own = static_cast<std::size_t>(label - 1);
  if (!(readout[own] > tau)) return {Verdict::fail, "own category unit not positive"};
  for (std::size_t i = 0; i < readout.size(); ++i) {
    if (i != own && !(readout[i] <= tau)) return {Verdict::fail, "category " + std::to_string(i + 1) + " also fires"};
  }
  return {Verdict::pass, ""};
}

inline VerificationReport verify_dataset(const ResNet& net, const LabeledDataset& d, double tau = kZeroTolerance) {
  VerificationReport report;
  report.tolerance = tau;
  CheckResult structure{"network validates"};
  structure.checked = 1;
  auto valid = validate_net(net);
  if (!valid.ok()) structure.fail(valid.first()->rule + ": " + valid.first()->detail);
  report.checks.push_back(structure);
  if (!valid.ok()) {
    report.failed = d.size();
    return report;
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    PointRecord rec;
    rec.id = i;
    rec.label = d.labels[i];
    NetOutput out = eval_net(net, d.points[i], true);
    rec.readout = out.output;
    std::tie(rec.verdict, rec.reason) = classify_readout(rec.readout, rec.label, tau);
    if (rec.verdict == Verdict::pass) {
      ++report.passed;
    } else {
      ++report.failed;
      rec.trace = std::move(out.trace);
    }
    report.points.push_back(std::move(rec));
  }
  return report;
}

// Recomputes every verdict from the stored readouts alone.
inline bool recheck_report(const VerificationReport& report) {
  std::size_t passed = 0, failed = 0;
  for (const PointRecord& rec : report.points) {
    auto [verdict, reason] = classify_readout(rec.readout, rec.label, report.tolerance);
    if (verdict != rec.verdict) return false;
    (verdict == Verdict::pass ? passed : failed) += 1;
  }
  if (report.points.empty()) return report.passed == 0;
  return passed == report.passed && failed == report.failed;
}

namespace detail {

inline bool slice_zero(const Vector& layer, const BranchRecord& b, double tau) {
  for (std::size_t u = 0; u < b.width; ++u) {
    if (!(std::abs(layer[b.offset + u]) <= tau)) return false;
  }
  return true;
}

inline bool slice_positive(const Vector& layer, const BranchRecord& b, double tau) {
  for (std::size_t u = 0; u < b.width; ++u) {
    if (!(layer[b.offset + u] > tau)) return false;
  }
  return true;
}

inline std::string describe(std::size_t point, std::size_t branch, std::size_t layer, const std::string& what) {
  std::ostringstream s;
  s << "point " << point << ", branch " << branch << ", layer " << layer << ": " << what;
  return s.str();
}

inline std::vector<ActivationTrace> traces(const ResNet& net, const LabeledDataset& d) {
  std::vector<ActivationTrace> out;
  out.reserve(d.size());
  for (const Vector& x : d.points) out.push_back(std::move(*eval_net(net, x, true).trace));
  return out;
}

inline bool is_member(const BranchRecord& b, std::size_t point) {
  return std::find(b.members.begin(), b.members.end(), point) != b.members.end();
}

}  // namespace detail

// Layers 1..L of the trace are branch layers; layer L + 1 is the readout.
struct ExclusionReport {
  CheckResult final_zero{"excluded branch slices are zero at the last branch layer"};
  CheckResult monotone{"a zeroed branch slice stays zero"};
  CheckResult covered_positive{"covering branch slice is positive at every layer"};
  // Per (point, branch) pair that excludes: first all-zero layer.
  std::vector<std::vector<std::optional<std::size_t>>> exclusion_layer;

  bool ok() const { return final_zero.passed() && monotone.passed() && covered_positive.passed(); }
};

inline ExclusionReport verify_exclusion(const ResNet& net, const LabeledDataset& d, double tau = kZeroTolerance) {
  ExclusionReport report;
  const auto& branches = net.metadata.branches;
  const std::size_t last = net.blocks.size() - 1;  // pre-readout layer
  auto all = detail::traces(net, d);
  report.exclusion_layer.assign(d.size(), std::vector<std::optional<std::size_t>>(branches.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& layers = all[i].layers;
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
      const BranchRecord& b = branches[bi];
      if (detail::is_member(b, i)) {
        ++report.covered_positive.checked;
        for (std::size_t l = 1; l <= last; ++l) {
          if (!detail::slice_positive(layers[l], b, tau)) {
            report.covered_positive.fail(detail::describe(i, bi, l, "covered point has a non-positive unit"));
            break;
          }
        }
        continue;
      }
      ++report.final_zero.checked;
      ++report.monotone.checked;
      std::optional<std::size_t> first_zero;
      for (std::size_t l = 1; l <= last; ++l) {
        bool zero = detail::slice_zero(layers[l], b, tau);
        if (zero && !first_zero) first_zero = l;
        if (!zero && first_zero) {
          report.monotone.fail(detail::describe(i, bi, l, "revived after zero at layer " + std::to_string(*first_zero)));
          break;
        }
      }
      if (!detail::slice_zero(layers[last], b, tau)) {
        report.final_zero.fail(detail::describe(i, bi, last, "excluded point has nonzero output"));
      }
      report.exclusion_layer[i][bi] = first_zero;
    }
  }
  return report;
}

struct PassThroughReport {
  CheckResult affine{"covered trace equals x + B(layer)"};
  CheckResult floor{"covered trace is at least mu"};
  double max_error = 0.0;

  bool ok() const { return affine.passed() && floor.passed(); }
};

inline PassThroughReport verify_pass_through(const ResNet& net, const LabeledDataset& d, double tol = 1e-9) {
  PassThroughReport report;
  const std::size_t last = net.blocks.size() - 1;
  const auto& branches = net.metadata.branches;
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    const BranchRecord& b = branches[bi];
    for (std::size_t i : b.members) {
      if (i >= d.size()) {
        report.affine.fail("branch " + std::to_string(bi) + " lists member " + std::to_string(i) + " outside dataset");
        continue;
      }
      ActivationTrace trace = std::move(*eval_net(net, d.points[i], true).trace);
      for (std::size_t l = 1; l <= last && l < b.shifts.size(); ++l) {
        ++report.affine.checked;
        ++report.floor.checked;
        double err = 0.0;
        bool below = false;
        for (std::size_t u = 0; u < b.width; ++u) {
          double got = trace.layers[l][b.offset + u];
          double want = d.points[i][u] + b.shifts[l][u];
          err = std::max(err, std::abs(got - want));
          below = below || got < b.margin - tol;
        }
        report.max_error = std::max(report.max_error, err);
        if (!(err <= tol)) report.affine.fail(detail::describe(i, bi, l, "deviation " + std::to_string(err)));
        if (below) report.floor.fail(detail::describe(i, bi, l, "coordinate below mu"));
      }
    }
  }
  return report;
}

struct DiffReport {
  std::size_t probes = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

// Bit-identical comparison of the merged pre-readout layer against the
// concatenated branch outputs, and of the two readouts.
inline DiffReport diff_parallel_merged(const ParallelNet& pn, const ResNet& merged, const std::vector<Vector>& probes) {
  DiffReport report;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    ++report.probes;
    ParallelOutput par = eval_parallel(pn, probes[p]);
    NetOutput out = eval_net(merged, probes[p], true);
    const Vector& pre = out.trace->layers[merged.blocks.size() - 1];
    bool same = pre == par.concatenated && out.output == par.readout;
    if (!same && report.mismatches++ == 0) report.first_mismatch = "probe " + std::to_string(p);
  }
  return report;
}

struct RegionReport {
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t inside_checked = 0;
  std::size_t outside_checked = 0;
  std::size_t skipped_boundary = 0;
  std::size_t skipped_ambiguous = 0;
  std::size_t skipped_outside_domain = 0;
  std::string first_disagreement;

  bool ok() const { return disagree == 0; }
};

// Geometric oracle: a probe strictly inside exactly one category's polytopes
// should fire that category alone; a probe outside every polytope should fire
// nothing. Probes within gamma_f of any facet, inside polytopes of two
// categories, or outside the network's certified domain are skipped.
inline RegionReport region_oracle_check(const ResNet& net, const std::vector<PolytopeCover>& covers,
                                        const std::vector<Vector>& probes, double tau = kZeroTolerance) {
  RegionReport report;
  const auto& domain = net.metadata.domain;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const Vector& x = probes[p];
    if (domain) {
      bool in = true;
      for (std::size_t j = 0; j < x.size(); ++j) in = in && x[j] >= domain->first[j] && x[j] <= domain->second[j];
      if (!in) {
        ++report.skipped_outside_domain;
        continue;
      }
    }
    bool near = false;
    std::vector<int> labels;
    for (const PolytopeCover& cover : covers) {
      for (const Polytope& poly : cover.polytopes) {
        for (const Facet& f : poly.facets) {
          double dist = std::abs(f.plane.value(x)) / std::sqrt(dot(f.plane.w, f.plane.w));
          near = near || dist < f.gamma;
        }
        if (polytope_contains(poly, x) == Membership::strictly_inside) labels.push_back(cover.target_label);
      }
    }
    if (near) {
      ++report.skipped_boundary;
      continue;
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() > 1) {
      ++report.skipped_ambiguous;
      continue;
    }
    Vector readout = eval_net(net, x).output;
    bool good;
    if (labels.empty()) {
      ++report.outside_checked;
      good = std::all_of(readout.begin(), readout.end(), [&](double v) { return v <= tau; });
    } else {
      ++report.inside_checked;
      good = classify_readout(readout, labels.front(), tau).first == Verdict::pass;
    }
    if (good) {
      ++report.agree;
    } else if (report.disagree++ == 0) {
      report.first_disagreement = "probe " + std::to_string(p);
    }
  }
  return report;
}

}  // namespace resnet_synth
