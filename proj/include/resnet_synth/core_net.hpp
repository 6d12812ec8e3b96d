#pragma once

// Residual network data model and exact forward evaluation.
//
// A block maps x (width n) to sigma(W x + b + alpha o f(x)) (width m), where
// f is the gate network. Every gate layer, including the last, is followed by
// a ReLU, so gate outputs are nonnegative. Evaluation is plain float64
// arithmetic with no tolerances; tolerances only appear in verification.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resnet_synth/error.hpp"
#include "resnet_synth/linalg.hpp"

namespace resnet_synth {

struct GateLayer {
  Matrix weights;  // units_out x units_in
  Vector biases;   // units_out

  std::size_t units_in() const { return weights.cols(); }
  std::size_t units_out() const { return weights.rows(); }
};

struct GateNetwork {
  std::vector<GateLayer> layers;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;

  // A single layer with every weight zero: f(x) = 0 everywhere.
  static GateNetwork closed(std::size_t input_dim, std::size_t output_dim) {
    return {{GateLayer{Matrix::zeros(output_dim, input_dim), Vector(output_dim, 0.0)}},
            input_dim,
            output_dim};
  }
};

struct ResNetBlock {
  Matrix shortcut;  // m x n
  Vector bias;      // m
  Vector alpha;     // m, one weight per gate output
  GateNetwork gate;
  bool identity_shortcut = false;

  std::size_t input_dim() const { return shortcut.cols(); }
  std::size_t output_dim() const { return shortcut.rows(); }
};

// What a synthesized branch looks like inside a (possibly merged) network.
struct BranchRecord {
  int label = 0;
  std::size_t polytope = 0;      // index within its category's cover
  std::size_t offset = 0;        // first unit of the branch's slice
  std::size_t width = 0;
  double margin = 0.0;           // pass-through floor mu
  std::vector<Vector> shifts;    // cumulative bias B at layers 1..rho_branch
  std::vector<std::size_t> members;  // dataset indices the branch passes
};

struct ConstructionTrace {
  std::string kind;  // "classifier", "approximator", or empty
  std::vector<BranchRecord> branches;
  std::vector<std::string> strategy_log;
  std::map<std::string, std::string> config;
  std::optional<double> read_off_offset;  // approximator: output = y - offset
  std::optional<std::pair<Vector, Vector>> domain;  // lower, upper
};

struct ResNet {
  std::vector<ResNetBlock> blocks;
  ConstructionTrace metadata;

  std::size_t depth() const { return blocks.size() + 1; }

  std::vector<std::size_t> widths() const {
    std::vector<std::size_t> w;
    if (blocks.empty()) return w;
    w.push_back(blocks.front().input_dim());
    for (const ResNetBlock& b : blocks) w.push_back(b.output_dim());
    return w;
  }

  std::size_t input_dim() const { return blocks.empty() ? 0 : blocks.front().input_dim(); }
  std::size_t output_dim() const { return blocks.empty() ? 0 : blocks.back().output_dim(); }
};

// x^(1) .. x^(rho); layer 0 is the input.
struct ActivationTrace {
  std::vector<Vector> layers;
};

inline std::string architecture_string(const ResNet& net) {
  std::string s;
  for (std::size_t w : net.widths()) {
    if (!s.empty()) s += "·";
    s += std::to_string(w);
  }
  return s;
}

inline Vector relu(std::span<const double> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorKind::invalid_input, "relu: non-finite entry at index " + std::to_string(i));
    }
    out[i] = v[i] > 0.0 ? v[i] : 0.0;
  }
  return out;
}

namespace detail {

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::dimension_mismatch, std::string(what) + ": expected length " +
                                                   std::to_string(want) + ", got " + std::to_string(got));
  }
}

inline Vector clamp_nonnegative(Vector v) {
  for (double& x : v) x = x > 0.0 ? x : 0.0;
  return v;
}

}  // namespace detail

inline Vector eval_gate(const GateNetwork& gate, std::span<const double> x) {
  detail::require_dim(x.size(), gate.input_dim, "eval_gate");
  Vector h(x.begin(), x.end());
  for (const GateLayer& layer : gate.layers) {
    detail::require_dim(h.size(), layer.units_in(), "eval_gate layer");
    Vector s = layer.weights.multiply(h);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += layer.biases[i];
    h = detail::clamp_nonnegative(std::move(s));
  }
  return h;
}

// Pre-activation s = W x + b + alpha o f(x).
inline Vector block_preactivation(const ResNetBlock& block, std::span<const double> x) {
  detail::require_dim(x.size(), block.input_dim(), "eval_block");
  Vector s = block.shortcut.multiply(x);
  Vector f = eval_gate(block.gate, x);
  detail::require_dim(f.size(), s.size(), "eval_block gate output");
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = (s[j] + block.bias[j]) + block.alpha[j] * f[j];
  return s;
}

inline Vector eval_block(const ResNetBlock& block, std::span<const double> x) {
  return detail::clamp_nonnegative(block_preactivation(block, x));
}

struct NetOutput {
  Vector output;
  std::optional<ActivationTrace> trace;
};

inline NetOutput eval_net(const ResNet& net, std::span<const double> x, bool keep_trace = false) {
  if (net.blocks.empty()) throw Error(ErrorKind::invalid_input, "eval_net: network has no blocks");
  detail::require_dim(x.size(), net.input_dim(), "eval_net");
  NetOutput out;
  Vector h(x.begin(), x.end());
  if (keep_trace) out.trace.emplace().layers.push_back(h);
  for (std::size_t i = 0; i < net.blocks.size(); ++i) {
    if (h.size() != net.blocks[i].input_dim()) {
      throw Error(ErrorKind::dimension_mismatch,
                  "eval_net: block " + std::to_string(i) + " expects width " +
                      std::to_string(net.blocks[i].input_dim()) + ", got " + std::to_string(h.size()));
    }
    h = eval_block(net.blocks[i], h);
    if (keep_trace) out.trace->layers.push_back(h);
  }
  out.output = std::move(h);
  return out;
}

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  const Violation* first() const { return violations.empty() ? nullptr : &violations.front(); }
};

namespace detail {

inline void validate_block(const ResNetBlock& b, std::size_t index, std::vector<Violation>& out) {
  const std::string where = "block " + std::to_string(index);
  const std::size_t n = b.input_dim(), m = b.output_dim();
  if (b.bias.size() != m) out.push_back({"bias length", where + ": bias has " + std::to_string(b.bias.size()) + " entries, expected " + std::to_string(m)});
  if (b.alpha.size() != m) out.push_back({"alpha length", where + ": alpha has " + std::to_string(b.alpha.size()) + " entries, expected " + std::to_string(m)});
  if (!b.shortcut.all_finite() || !all_finite(b.bias) || !all_finite(b.alpha)) {
    out.push_back({"finite parameters", where + ": non-finite shortcut, bias, or alpha"});
  }
  if (b.identity_shortcut && !b.shortcut.is_identity()) {
    out.push_back({"identity flag", where + ": flagged identity but shortcut is not the identity"});
  }
  const GateNetwork& g = b.gate;
  if (g.layers.empty()) {
    out.push_back({"gate layers", where + ": gate network has no layers"});
    return;
  }
  if (g.input_dim != n) out.push_back({"gate input", where + ": gate input_dim " + std::to_string(g.input_dim) + " != block input " + std::to_string(n)});
  if (g.output_dim != m) {
    out.push_back({"gate/output correspondence", where + ": gate output_dim " + std::to_string(g.output_dim) + " != block output " + std::to_string(m)});
  }
  std::size_t width = g.input_dim;
  for (std::size_t l = 0; l < g.layers.size(); ++l) {
    const GateLayer& layer = g.layers[l];
    const std::string lw = where + " gate layer " + std::to_string(l);
    if (layer.units_in() != width) out.push_back({"gate chain", lw + ": expects " + std::to_string(layer.units_in()) + " inputs, previous width " + std::to_string(width)});
    if (layer.biases.size() != layer.units_out()) out.push_back({"gate bias length", lw + ": weights rows != biases length"});
    if (!layer.weights.all_finite() || !all_finite(layer.biases)) out.push_back({"finite parameters", lw + ": non-finite entry"});
    width = layer.units_out();
  }
  if (width != g.output_dim) {
    out.push_back({"gate/output correspondence", where + ": last gate layer has " + std::to_string(width) + " units, block output is " + std::to_string(m)});
  }
}

}  // namespace detail

// Collects every violation; `require_depth` can be dropped to check a branch
// fragment that has fewer than two blocks.
inline ValidationResult validate_net(const ResNet& net, bool require_depth = true) {
  ValidationResult r;
  if (require_depth && net.depth() < 3) {
    r.violations.push_back({"depth", "depth " + std::to_string(net.depth()) + " < 3"});
  }
  for (std::size_t i = 0; i < net.blocks.size(); ++i) {
    detail::validate_block(net.blocks[i], i, r.violations);
    if (i + 1 < net.blocks.size() && net.blocks[i].output_dim() != net.blocks[i + 1].input_dim()) {
      r.violations.push_back({"width chain", "block " + std::to_string(i) + " outputs " +
                                                 std::to_string(net.blocks[i].output_dim()) + " units, block " +
                                                 std::to_string(i + 1) + " expects " +
                                                 std::to_string(net.blocks[i + 1].input_dim())});
    }
  }
  return r;
}

}  // namespace resnet_synth
