#include <cstdio>
#pragma once

// Explicit weight synthesis for exact classification of a finite dataset.
//
// Pipeline: one polytope cover per category -> one branch ResNet per polytope
// (a chain of identity blocks, one per facet) -> depth equalization with
// redundant blocks -> a 0/1 readout -> a single merged ResNet whose first
// shortcut dispatches the shared input to every branch.
//
// Inside a branch every surviving point is carried as x + B (B the cumulative
// bias), with every coordinate >= mu. Excluded points become the zero vector.
// The zero vector would be revived by any later block whose gate is closed at
// the origin, so every block after the first also excludes the origin.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "resnet_synth/core_net.hpp"
#include "resnet_synth/error.hpp"
#include "resnet_synth/geometry.hpp"
#include "resnet_synth/linalg.hpp"

namespace resnet_synth {

enum class ZeroExclusion { lp_first, or_gate_always };

inline const char* to_string(ZeroExclusion z) {
  return z == ZeroExclusion::lp_first ? "lp-first" : "or-gate";
}

inline const char* to_string(CoverStrategy s) {
  return s == CoverStrategy::per_point ? "per-point" : "greedy";
}

struct SynthesisConfig {
  double margin = 1.0;        // mu
  double alpha_safety = 2.0;  // s_alpha
  CoverStrategy cover = CoverStrategy::per_point;
  ZeroExclusion zero_exclusion = ZeroExclusion::lp_first;
  // Region on which the network reproduces the cover exactly (away from facet
  // bands): the data bounding box padded by max(domain_padding, span / 2).
  double domain_padding = 1.0;
  // Region guarantees enumerate 2^n box corners; above this dimension only
  // the dataset itself is certified.
  std::size_t max_witness_dim = 10;

  void validate() const {
    if (!(margin > 0.0) || !std::isfinite(margin)) throw Error(ErrorKind::invalid_input, "margin must be positive");
    if (!(alpha_safety > 1.0) || !std::isfinite(alpha_safety)) {
      throw Error(ErrorKind::invalid_input, "alpha safety factor must exceed 1");
    }
    if (!(domain_padding >= 0.0)) throw Error(ErrorKind::invalid_input, "domain padding must be nonnegative");
  }
};

struct ShiftTracker {
  std::vector<Vector> shifts;  // B per layer, shifts[0] = 0
  double margin = 1.0;

  static ShiftTracker start(std::size_t n, double margin) { return {{Vector(n, 0.0)}, margin}; }
  const Vector& current() const { return shifts.back(); }
  std::size_t width() const { return shifts.front().size(); }

  Vector to_current(std::span<const double> x) const { return add(x, current()); }
};

enum class BlockStrategy { pass_through, single, origin_in_lp, or_gate, redundant };

inline const char* to_string(BlockStrategy s) {
  switch (s) {
    case BlockStrategy::pass_through: return "pass-through";
    case BlockStrategy::single: return "single";
    case BlockStrategy::origin_in_lp: return "lp-first";
    case BlockStrategy::or_gate: return "or-gate";
    case BlockStrategy::redundant: return "redundant";
  }
  return "?";
}

struct BlockBuild {
  ResNetBlock block;
  ShiftTracker tracker;
  BlockStrategy strategy = BlockStrategy::single;
};

namespace detail {

inline GateNetwork replicated_gate(const Hyperplane& h, std::size_t m) {
  const std::size_t n = h.w.size();
  std::vector<Vector> rows(m, h.w);
  return {{GateLayer{Matrix::from_rows(rows, n), Vector(m, h.c)}}, n, m};
}

// Unit j = relu(relu(a.x + ca) + relu(b.x + cb)): positive iff either fires.
inline GateNetwork or_gate(const Hyperplane& a, const Hyperplane& b, std::size_t m) {
  const std::size_t n = a.w.size();
  GateLayer first{Matrix::from_rows({a.w, b.w}, n), {a.c, b.c}};
  GateLayer second{Matrix::from_rows(std::vector<Vector>(m, Vector{1.0, 1.0}), 2), Vector(m, 0.0)};
  return {{std::move(first), std::move(second)}, n, m};
}

inline Vector pass_bias(const std::vector<Vector>& pass, std::size_t n, double mu) {
  Vector b(n, mu);
  for (std::size_t j = 0; j < n; ++j) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const Vector& x : pass) lowest = std::min(lowest, x[j]);
    if (!pass.empty()) b[j] = mu + std::max(0.0, -lowest);
  }
  return b;
}

// alpha_j = s * min(0, min_kill -(x_j + b_j) / f_j(x)).
inline Vector exclusion_alpha(const GateNetwork& gate, const Vector& b, const std::vector<Vector>& kill,
                              double safety) {
  const std::size_t m = b.size();
  Vector required(m, 0.0);
  for (const Vector& x : kill) {
    Vector f = eval_gate(gate, x);
    for (std::size_t j = 0; j < m; ++j) {
      if (!(f[j] > 0.0)) {
        throw Error(ErrorKind::infeasible, "gate does not fire on an exclusion point");
      }
      required[j] = std::min(required[j], -(x[j] + b[j]) / f[j]);
    }
  }
  for (double& a : required) a *= safety;
  return required;
}

}  // namespace detail

// Builds an n-identity block that maps every pass point to x + b (all
// coordinates >= mu) and every kill point to the zero vector. Points are in
// current-layer coordinates. With `exclude_origin` the zero vector is also
// killed, via a single hyperplane when possible under lp_first, otherwise via
// a two-layer OR gate.
inline BlockBuild build_block(const std::vector<Vector>& pass, const std::vector<Vector>& kill,
                              const ShiftTracker& tracker, const SynthesisConfig& cfg, bool exclude_origin = false) {
  cfg.validate();
  const std::size_t n = tracker.width();
  if (pass.empty()) throw Error(ErrorKind::invalid_input, "build_block: empty pass set");
  for (const auto* set : {&pass, &kill}) {
    for (const Vector& x : *set) detail::require_dim(x.size(), n, "build_block point");
  }

  BlockBuild out;
  ResNetBlock& block = out.block;
  block.shortcut = Matrix::identity(n);
  block.identity_shortcut = true;
  block.bias = detail::pass_bias(pass, n, tracker.margin);

  std::vector<Vector> kill_all = kill;
  if (exclude_origin) kill_all.push_back(Vector(n, 0.0));

  if (kill_all.empty()) {
    block.gate = GateNetwork::closed(n, n);
    block.alpha = Vector(n, 0.0);
    out.strategy = BlockStrategy::pass_through;
  } else {
    auto infeasible = [](const char* what) {
      return Error(ErrorKind::infeasible, std::string("build_block: ") + what + " is not linearly separable");
    };
    std::optional<SeparationCertificate> single;
    if (!exclude_origin) {
      single = separate(pass, kill, n);
      if (!single) { { FILE* fp = std::fopen("/tmp/sep.txt", "w"); std::fprintf(fp, "%zu %zu %zu\n", n, pass.size(), kill.size());
          for (auto* set : {&pass, &kill}) for (auto& x : *set) { for (double v : x) std::fprintf(fp, "%.17g ", v); std::fprintf(fp, "\n"); }
          std::fclose(fp); std::fprintf(stderr, "DUMP\n"); } throw infeasible("pass/kill split"); }
      out.strategy = BlockStrategy::single;
    } else if (kill.empty()) {
      single = separate(pass, kill_all, n);
      if (!single) throw infeasible("origin exclusion");
      out.strategy = BlockStrategy::origin_in_lp;
    } else if (cfg.zero_exclusion == ZeroExclusion::lp_first) {
      single = separate(pass, kill_all, n);
      if (single) out.strategy = BlockStrategy::origin_in_lp;
    }
    if (single) {
      block.gate = detail::replicated_gate(single->plane, n);
    } else {
      auto facet = separate(pass, kill, n);
      if (!facet) { { FILE* fp = std::fopen("/tmp/sep.txt", "w"); std::fprintf(fp, "%zu %zu %zu\n", n, pass.size(), kill.size());
          for (auto* set : {&pass, &kill}) for (auto& x : *set) { for (double v : x) std::fprintf(fp, "%.17g ", v); std::fprintf(fp, "\n"); }
          std::fclose(fp); std::fprintf(stderr, "DUMP\n"); } throw infeasible("pass/kill split"); }
      std::vector<Vector> everything = pass;
      everything.insert(everything.end(), kill.begin(), kill.end());
      auto origin = separate(everything, {Vector(n, 0.0)}, n);
      if (!origin) throw infeasible("origin exclusion");
      block.gate = detail::or_gate(facet->plane, origin->plane, n);
      out.strategy = BlockStrategy::or_gate;
    }
    block.alpha = detail::exclusion_alpha(block.gate, block.bias, kill_all, cfg.alpha_safety);
  }

  out.tracker = tracker;
  out.tracker.shifts.push_back(add(tracker.current(), block.bias));
  return out;
}

// Gate w = -1, c = mu/2: closed on every survivor (all coordinates >= mu),
// open at the origin, which alpha sends back to zero.
inline ResNetBlock build_redundant_block(std::size_t width, ShiftTracker& tracker, const SynthesisConfig& cfg) {
  cfg.validate();
  const double mu = tracker.margin;
  ResNetBlock block;
  block.shortcut = Matrix::identity(width);
  block.identity_shortcut = true;
  block.bias = Vector(width, mu);
  block.gate = detail::replicated_gate({Vector(width, -1.0), mu / 2.0}, width);
  block.alpha = detail::exclusion_alpha(block.gate, block.bias, {Vector(width, 0.0)}, cfg.alpha_safety);
  tracker.shifts.push_back(add(tracker.current(), block.bias));
  return block;
}

struct ChainBuild {
  ResNet fragment;
  ShiftTracker tracker;
  std::vector<BlockStrategy> strategies;
  std::vector<std::size_t> exclusion_block;  // per kill point: block index that zeroes it
};

namespace detail {

inline std::vector<Vector> box_corners(const Vector& lo, const Vector& hi) {
  const std::size_t n = lo.size();
  std::vector<Vector> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = (mask >> j) & 1 ? hi[j] : lo[j];
    corners.push_back(std::move(c));
  }
  return corners;
}

}  // namespace detail

// One block per facet of p. At block t the kill set is the surviving points
// that violate facet t. If `domain` is given and p is an axis-aligned box,
// the corners of the still-alive part of the domain on each side of the facet
// join the pass and kill sets, which makes the pass/exclude behaviour exact
// for every input in the domain outside the facet bands.
inline ChainBuild build_chain(const std::vector<Vector>& pass, const std::vector<Vector>& kill, const Polytope& p,
                              const SynthesisConfig& cfg, const std::optional<Box>& domain = std::nullopt) {
  cfg.validate();
  if (pass.empty()) throw Error(ErrorKind::invalid_input, "build_chain: empty pass set");
  if (p.facets.empty()) throw Error(ErrorKind::invalid_input, "build_chain: polytope has no facets");
  const std::size_t n = pass.front().size();
  for (const Vector& x : pass) {
    detail::require_dim(x.size(), n, "build_chain pass point");
    if (polytope_contains(p, x) != Membership::strictly_inside) {
      throw Error(ErrorKind::invalid_input, "build_chain: pass point not strictly inside the polytope");
    }
  }
  for (const Vector& x : kill) {
    detail::require_dim(x.size(), n, "build_chain kill point");
    if (polytope_contains(p, x) != Membership::outside) {
      throw Error(ErrorKind::invalid_input, "build_chain: kill point inside the polytope");
    }
  }

  std::optional<Box> region;
  if (domain && p.box && n <= cfg.max_witness_dim &&
      std::all_of(p.facets.begin(), p.facets.end(), [](const Facet& f) { return axis_of(f.plane).has_value(); })) {
    region = domain;
  }

  ChainBuild chain;
  chain.tracker = ShiftTracker::start(n, cfg.margin);
  chain.exclusion_block.assign(kill.size(), p.facets.size());
  std::vector<bool> alive(kill.size(), true);

  for (std::size_t t = 0; t < p.facets.size(); ++t) {
    const Facet& facet = p.facets[t];
    std::vector<Vector> pass_t, kill_t;
    for (const Vector& x : pass) pass_t.push_back(chain.tracker.to_current(x));
    std::vector<std::size_t> dying;
    for (std::size_t i = 0; i < kill.size(); ++i) {
      if (!alive[i]) continue;
      if (facet.plane.value(kill[i]) <= -facet.gamma) {
        pass_t.push_back(chain.tracker.to_current(kill[i]));
      } else {
        kill_t.push_back(chain.tracker.to_current(kill[i]));
        dying.push_back(i);
      }
    }
    if (region) {
      auto [axis, sign] = *axis_of(facet.plane);
      // Inside: sign * x_axis + c <= -gamma. Beyond the facet: >= 0.
      Box inner = *region, beyond = *region;
      double bound_inner = sign * (-facet.plane.c - facet.gamma);
      double bound_facet = sign * (-facet.plane.c);
      if (sign > 0) {
        inner.upper[axis] = std::min(inner.upper[axis], bound_inner);
        beyond.lower[axis] = std::max(beyond.lower[axis], bound_facet);
      } else {
        inner.lower[axis] = std::max(inner.lower[axis], bound_inner);
        beyond.upper[axis] = std::min(beyond.upper[axis], bound_facet);
      }
      for (const Vector& c : detail::box_corners(inner.lower, inner.upper)) {
        pass_t.push_back(chain.tracker.to_current(c));
      }
      if (beyond.lower[axis] <= beyond.upper[axis]) {
        for (const Vector& c : detail::box_corners(beyond.lower, beyond.upper)) {
          kill_t.push_back(chain.tracker.to_current(c));
        }
      }
      region = inner;
    }
    BlockBuild built = build_block(pass_t, kill_t, chain.tracker, cfg, t > 0);
    chain.fragment.blocks.push_back(std::move(built.block));
    chain.tracker = std::move(built.tracker);
    chain.strategies.push_back(built.strategy);
    for (std::size_t i : dying) {
      alive[i] = false;
      chain.exclusion_block[i] = t;
    }
  }
  return chain;
}

struct ReadoutSpec {
  Matrix pattern;                  // k x (total branch width), entries 0/1
  std::vector<int> branch_labels;  // category of each branch
};

struct Branch {
  ResNet net;
  ShiftTracker tracker;
  int label = 0;
  std::size_t polytope = 0;
  std::vector<std::size_t> members;
  std::vector<BlockStrategy> strategies;
};

struct ParallelNet {
  std::vector<Branch> branches;
  ReadoutSpec readout;
  std::size_t input_dim = 0;
  int k = 0;
  SynthesisConfig config;
  std::optional<Box> domain;

  std::size_t total_width() const {
    std::size_t w = 0;
    for (const Branch& b : branches) w += b.net.output_dim();
    return w;
  }
};

inline Box padded_domain(const LabeledDataset& d, double padding) {
  Box box{Vector(d.n, std::numeric_limits<double>::infinity()), Vector(d.n, -std::numeric_limits<double>::infinity())};
  for (const Vector& x : d.points) {
    for (std::size_t j = 0; j < d.n; ++j) {
      box.lower[j] = std::min(box.lower[j], x[j]);
      box.upper[j] = std::max(box.upper[j], x[j]);
    }
  }
  double span = 0.0;
  for (std::size_t j = 0; j < d.n; ++j) span = std::max(span, box.upper[j] - box.lower[j]);
  double pad = std::max(padding, 0.5 * span);
  for (std::size_t j = 0; j < d.n; ++j) {
    box.lower[j] -= pad;
    box.upper[j] += pad;
  }
  return box;
}

// The readout unit of category i sums the final units of its branches.
inline ResNetBlock readout_block(const ParallelNet& pn) {
  ResNetBlock block;
  block.shortcut = pn.readout.pattern;
  const std::size_t k = pn.readout.pattern.rows();
  block.bias = Vector(k, 0.0);
  block.alpha = Vector(k, 0.0);
  block.gate = GateNetwork::closed(pn.readout.pattern.cols(), k);
  return block;
}

inline ParallelNet build_parallel(const LabeledDataset& d, const std::vector<PolytopeCover>& covers,
                                  const SynthesisConfig& cfg) {
  cfg.validate();
  check_dataset(d);
  for (const PolytopeCover& cover : covers) {
    if (cover.dataset_size != d.size()) throw Error(ErrorKind::invalid_input, "cover built for a different dataset");
    if (!validate_cover(cover, d).ok()) {
      throw Error(ErrorKind::invalid_input, "cover for label " + std::to_string(cover.target_label) + " is invalid");
    }
  }
  for (int label = 1; label <= d.k; ++label) {
    bool present = std::any_of(d.labels.begin(), d.labels.end(), [&](int l) { return l == label; });
    bool covered = std::any_of(covers.begin(), covers.end(), [&](const PolytopeCover& c) { return c.target_label == label; });
    if (present && !covered) throw Error(ErrorKind::invalid_input, "no cover for label " + std::to_string(label));
  }

  ParallelNet pn;
  pn.input_dim = d.n;
  pn.k = d.k;
  pn.config = cfg;
  pn.domain = padded_domain(d, cfg.domain_padding);

  for (const PolytopeCover& cover : covers) {
    for (std::size_t p = 0; p < cover.polytopes.size(); ++p) {
      std::vector<Vector> pass, kill;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (polytope_contains(cover.polytopes[p], d.points[i]) == Membership::strictly_inside) {
          pass.push_back(d.points[i]);
        } else {
          kill.push_back(d.points[i]);
        }
      }
      ChainBuild chain = build_chain(pass, kill, cover.polytopes[p], cfg, pn.domain);
      Branch b;
      b.net = std::move(chain.fragment);
      b.tracker = std::move(chain.tracker);
      b.label = cover.target_label;
      b.polytope = p;
      b.members = cover.members[p];
      b.strategies = std::move(chain.strategies);
      pn.branches.push_back(std::move(b));
    }
  }

  std::size_t depth = 2;  // blocks per branch; keeps each branch a valid ResNet
  for (const Branch& b : pn.branches) depth = std::max(depth, b.net.blocks.size());
  for (Branch& b : pn.branches) {
    while (b.net.blocks.size() < depth) {
      b.net.blocks.push_back(build_redundant_block(d.n, b.tracker, cfg));
      b.strategies.push_back(BlockStrategy::redundant);
    }
  }

  std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> ones;
  std::size_t offset = 0;
  for (const Branch& b : pn.branches) {
    for (std::size_t u = 0; u < b.net.output_dim(); ++u) {
      ones.push_back({{static_cast<std::size_t>(b.label - 1), offset + u}, 1.0});
    }
    offset += b.net.output_dim();
    pn.readout.branch_labels.push_back(b.label);
  }
  pn.readout.pattern = Matrix::from_triplets(static_cast<std::size_t>(d.k), offset, std::move(ones));
  return pn;
}

struct ParallelOutput {
  Vector concatenated;  // final branch layers, in branch order
  Vector readout;
};

inline ParallelOutput eval_parallel(const ParallelNet& pn, std::span<const double> x) {
  ParallelOutput out;
  for (const Branch& b : pn.branches) {
    Vector y = eval_net(b.net, x).output;
    out.concatenated.insert(out.concatenated.end(), y.begin(), y.end());
  }
  out.readout = eval_block(readout_block(pn), out.concatenated);
  return out;
}

namespace detail {

// Appends identity layers so the gate has `depth` layers. Exact, since the
// padded layers see nonnegative inputs.
inline GateNetwork pad_gate(GateNetwork g, std::size_t depth) {
  while (g.layers.size() < depth) {
    std::size_t m = g.layers.back().units_out();
    g.layers.push_back({Matrix::identity(m), Vector(m, 0.0)});
  }
  return g;
}

template <typename T>
void append(std::vector<T>& out, const std::vector<T>& in) {
  out.insert(out.end(), in.begin(), in.end());
}

}  // namespace detail

inline std::vector<std::string> strategy_log(const ParallelNet& pn) {
  std::vector<std::string> log;
  for (std::size_t i = 0; i < pn.branches.size(); ++i) {
    const Branch& b = pn.branches[i];
    std::ostringstream line;
    line << "branch " << i << " label " << b.label << " polytope " << b.polytope << ":";
    for (BlockStrategy s : b.strategies) line << ' ' << to_string(s);
    log.push_back(line.str());
  }
  return log;
}

// Block 1 stacks the branches' first shortcuts (a projection shortcut that
// dispatches the shared input); later blocks are block-diagonal with zero
// cross-branch weights; the last block is the readout.
inline ResNet merge_to_single(const ParallelNet& pn) {
  if (pn.branches.empty()) throw Error(ErrorKind::invalid_input, "merge_to_single: no branches");
  const std::size_t depth = pn.branches.front().net.blocks.size();
  for (const Branch& b : pn.branches) {
    if (b.net.blocks.size() != depth) throw Error(ErrorKind::invalid_input, "merge_to_single: unequal branch depths");
    if (b.net.input_dim() != pn.input_dim) throw Error(ErrorKind::dimension_mismatch, "merge_to_single: branch input");
  }
  const std::size_t total = pn.total_width();

  ResNet net;
  for (std::size_t t = 0; t < depth; ++t) {
    const bool shared_input = t == 0;
    const std::size_t in_width = shared_input ? pn.input_dim : total;
    std::size_t gate_depth = 0;
    for (const Branch& b : pn.branches) gate_depth = std::max(gate_depth, b.net.blocks[t].gate.layers.size());

    std::vector<GateNetwork> gates;
    for (const Branch& b : pn.branches) gates.push_back(detail::pad_gate(b.net.blocks[t].gate, gate_depth));

    ResNetBlock block;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Matrix*>> parts;
    std::size_t row = 0, col = 0;
    bool all_identity = !shared_input;
    for (const Branch& b : pn.branches) {
      const ResNetBlock& src = b.net.blocks[t];
      parts.push_back({{row, shared_input ? 0 : col}, &src.shortcut});
      all_identity = all_identity && src.identity_shortcut;
      detail::append(block.bias, src.bias);
      detail::append(block.alpha, src.alpha);
      row += src.output_dim();
      col += src.input_dim();
    }
    block.shortcut = Matrix::assemble(total, in_width, parts);
    block.identity_shortcut = all_identity && block.shortcut.is_identity();

    block.gate.input_dim = in_width;
    block.gate.output_dim = total;
    std::vector<std::size_t> gate_in(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) gate_in[i] = pn.branches[i].net.blocks[t].input_dim();
    for (std::size_t l = 0; l < gate_depth; ++l) {
      std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Matrix*>> lparts;
      Vector biases;
      std::size_t r = 0, c = 0;
      for (std::size_t i = 0; i < gates.size(); ++i) {
        const GateLayer& layer = gates[i].layers[l];
        const bool stacked = shared_input && l == 0;
        lparts.push_back({{r, stacked ? 0 : c}, &layer.weights});
        detail::append(biases, layer.biases);
        r += layer.units_out();
        c += layer.units_in();
      }
      const std::size_t cols = (shared_input && l == 0) ? pn.input_dim : c;
      block.gate.layers.push_back({Matrix::assemble(r, cols, lparts), std::move(biases)});
    }
    net.blocks.push_back(std::move(block));
  }
  net.blocks.push_back(readout_block(pn));

  ConstructionTrace& meta = net.metadata;
  meta.kind = "classifier";
  std::size_t offset = 0;
  for (const Branch& b : pn.branches) {
    BranchRecord rec;
    rec.label = b.label;
    rec.polytope = b.polytope;
    rec.offset = offset;
    rec.width = b.net.output_dim();
    rec.margin = b.tracker.margin;
    rec.shifts = b.tracker.shifts;
    rec.members = b.members;
    offset += rec.width;
    meta.branches.push_back(std::move(rec));
  }
  meta.strategy_log = strategy_log(pn);
  meta.config["margin"] = format_double(pn.config.margin);
  meta.config["alpha_safety"] = format_double(pn.config.alpha_safety);
  meta.config["domain_padding"] = format_double(pn.config.domain_padding);
  meta.config["cover"] = to_string(pn.config.cover);
  meta.config["zero_exclusion"] = to_string(pn.config.zero_exclusion);
  meta.config["redundant_block"] = "gate w=-1, c=mu/2";
  if (pn.domain) meta.domain = std::make_pair(pn.domain->lower, pn.domain->upper);
  return net;
}

}  // namespace resnet_synth
