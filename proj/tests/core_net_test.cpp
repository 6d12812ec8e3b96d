#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "resnet_synth/core_net.hpp"
#include "resnet_synth/synthesize.hpp"
#include "support.hpp"

namespace rs = resnet_synth;
using rs::Matrix;
using rs::Vector;

namespace {

bool has_rule(const rs::ValidationResult& r, const std::string& rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const rs::Violation& v) { return v.rule == rule; });
}

rs::GateNetwork one_layer(const std::vector<Vector>& w, const Vector& b) {
  return {{{Matrix::from_rows(w, w.front().size()), b}}, w.front().size(), w.size()};
}

rs::ResNetBlock pass_block(std::size_t n) {
  rs::ResNetBlock b;
  b.shortcut = Matrix::identity(n);
  b.identity_shortcut = true;
  b.bias = Vector(n, 0.0);
  b.alpha = Vector(n, 0.0);
  b.gate = rs::GateNetwork::closed(n, n);
  return b;
}

// 2-identity block, gate rows (1,1) with c = -2, alpha = -10, b = 1.
rs::ResNetBlock hand_block() {
  rs::ResNetBlock b = pass_block(2);
  b.bias = {1, 1};
  b.alpha = {-10, -10};
  b.gate = one_layer({{1, 1}, {1, 1}}, {-2, -2});
  return b;
}

}  // namespace

TEST(Relu, ClampsNegatives) {
  EXPECT_EQ(rs::relu(Vector{-1, 0, 2}), (Vector{0, 0, 2}));
  EXPECT_EQ(rs::relu(Vector{0, 0}), (Vector{0, 0}));
  EXPECT_EQ(rs::relu(Vector{3.5, -3.5}), (Vector{3.5, 0}));
}

TEST(Relu, RejectsNonFinite) {
  EXPECT_THROW(rs::relu(Vector{std::numeric_limits<double>::quiet_NaN()}), rs::Error);
  EXPECT_THROW(rs::relu(Vector{std::numeric_limits<double>::infinity()}), rs::Error);
}

TEST(EvalGate, OneLayerHandValues) {
  auto g = one_layer({{1, 1}}, {-2});
  EXPECT_EQ(rs::eval_gate(g, Vector{0, 0}), (Vector{0}));
  EXPECT_EQ(rs::eval_gate(g, Vector{2, 2}), (Vector{2}));
}

TEST(EvalGate, TwoLayersReluAfterEach) {
  rs::GateNetwork g{{{Matrix::from_rows({{1}}, 1), {-1}}, {Matrix::from_rows({{1}}, 1), {0}}}, 1, 1};
  EXPECT_EQ(rs::eval_gate(g, Vector{3}), (Vector{2}));
  EXPECT_EQ(rs::eval_gate(g, Vector{-4}), (Vector{0}));
}

TEST(EvalGate, DimensionMismatchThrows) {
  auto g = one_layer({{1, 1}}, {-2});
  EXPECT_THROW(rs::eval_gate(g, Vector{1, 2, 3}), rs::Error);
}

TEST(EvalBlock, ClosedGateIsPassThrough) { EXPECT_EQ(rs::eval_block(hand_block(), Vector{0, 0}), (Vector{1, 1})); }

TEST(EvalBlock, OpenGateZeroes) {
  auto b = hand_block();
  EXPECT_EQ(rs::block_preactivation(b, Vector{2, 2}), (Vector{-17, -17}));
  EXPECT_EQ(rs::eval_block(b, Vector{2, 2}), (Vector{0, 0}));
}

TEST(EvalBlock, ZeroAlphaDisconnectsGate) {
  auto b = hand_block();
  b.bias = {0, 0};
  b.alpha = {0, 0};
  EXPECT_EQ(rs::eval_block(b, Vector{5, 7}), (Vector{5, 7}));
}

TEST(EvalNet, IdentityChainKeepsInputAtEveryLayer) {
  rs::ResNet net;
  for (int i = 0; i < 3; ++i) net.blocks.push_back(pass_block(3));
  Vector x{0.5, 2, 7};
  auto out = rs::eval_net(net, x, true);
  ASSERT_TRUE(out.trace);
  ASSERT_EQ(out.trace->layers.size(), 4u);
  for (const Vector& layer : out.trace->layers) EXPECT_EQ(layer, x);
}

TEST(EvalNet, TraceOmittedByDefault) {
  rs::ResNet net;
  net.blocks = {pass_block(1), pass_block(1)};
  EXPECT_FALSE(rs::eval_net(net, Vector{1}).trace.has_value());
}

TEST(EvalNet, SynthesizedXorFiresOnlyOwnCategory) {
  auto s = rs::synthesize(rs::testing::xor_dataset());
  Vector y = rs::eval_net(s.net, Vector{0, 0}).output;
  ASSERT_EQ(y.size(), 2u);
  EXPECT_GT(y[0], 0.0);
  EXPECT_EQ(y[1], 0.0);
}

TEST(ValidateNet, WellFormedNetPasses) {
  rs::ResNet net;
  net.blocks = {hand_block(), hand_block()};
  EXPECT_TRUE(rs::validate_net(net).ok());
  EXPECT_EQ(rs::architecture_string(net), "2·2·2");
}

TEST(ValidateNet, GateOutputMismatch) {
  rs::ResNet net;
  net.blocks = {hand_block(), hand_block()};
  net.blocks[1].gate = one_layer({{1, 1}}, {-2});
  EXPECT_TRUE(has_rule(rs::validate_net(net), "gate/output correspondence"));
}

TEST(ValidateNet, WidthChainMismatch) {
  rs::ResNet net;
  rs::ResNetBlock widen;
  widen.shortcut = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}, 2);
  widen.bias = Vector(3, 0.0);
  widen.alpha = Vector(3, 0.0);
  widen.gate = rs::GateNetwork::closed(2, 3);
  net.blocks = {widen, hand_block()};
  EXPECT_TRUE(has_rule(rs::validate_net(net), "width chain"));
}

TEST(ValidateNet, DepthBelowThree) {
  rs::ResNet net;
  net.blocks = {hand_block()};
  EXPECT_TRUE(has_rule(rs::validate_net(net), "depth"));
  EXPECT_TRUE(rs::validate_net(net, false).ok());
}

TEST(ValidateNet, IdentityFlagNeedsIdentity) {
  rs::ResNet net;
  net.blocks = {hand_block(), hand_block()};
  net.blocks[0].shortcut = Matrix::from_rows({{2, 0}, {0, 1}}, 2);
  EXPECT_TRUE(has_rule(rs::validate_net(net), "identity flag"));
}

TEST(ValidateNet, NonFiniteParameter) {
  rs::ResNet net;
  net.blocks = {hand_block(), hand_block()};
  net.blocks[1].alpha[0] = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(has_rule(rs::validate_net(net), "finite parameters"));
}

TEST(Matrix, SparseProductMatchesDense) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::bernoulli_distribution keep(0.4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> rows(4, Vector(5, 0.0));
    for (auto& r : rows) {
      for (double& v : r) v = keep(rng) ? u(rng) : 0.0;
    }
    Matrix m = Matrix::from_rows(rows, 5);
    Vector x(5);
    for (double& v : x) v = u(rng);
    Vector y = m.multiply(x);
    for (std::size_t i = 0; i < 4; ++i) {
      double want = 0.0;
      for (std::size_t j = 0; j < 5; ++j) {
        if (rows[i][j] != 0.0) want += rows[i][j] * x[j];
      }
      EXPECT_EQ(y[i], want);
      EXPECT_EQ(m.row_dense(i), rows[i]);
    }
  }
}

TEST(Matrix, TripletsRejectDuplicatesAndRange) {
  using T = std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>>;
  EXPECT_THROW(Matrix::from_triplets(2, 2, T{{{0, 0}, 1.0}, {{0, 0}, 2.0}}), rs::Error);
  EXPECT_THROW(Matrix::from_triplets(2, 2, T{{{2, 0}, 1.0}}), rs::Error);
  Matrix m = Matrix::from_triplets(2, 3, T{{{1, 2}, 4.0}, {{0, 1}, 3.0}});
  EXPECT_EQ(m.at(0, 1), 3.0);
  EXPECT_EQ(m.at(1, 2), 4.0);
  EXPECT_EQ(m.at(1, 0), 0.0);
  EXPECT_EQ(m.nonzeros(), 2u);
}
