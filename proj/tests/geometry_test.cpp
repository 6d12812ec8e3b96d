#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "resnet_synth/geometry.hpp"
#include "resnet_synth/lp.hpp"
#include "support.hpp"

namespace rs = resnet_synth;
using rs::Vector;

TEST(Simplex, SmallProblemOptimum) {
  // min -x1 - 2 x2  s.t. x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6.  Vertex (3, 1).
  std::vector<Vector> a{{1, 1, 1, 0}, {1, 3, 0, 1}};
  auto r = rs::lp::solve_standard_form(a, {4, 6}, {-1, -2, 0, 0});
  ASSERT_EQ(r.status, rs::lp::Status::optimal);
  EXPECT_NEAR(r.objective, -5.0, 1e-12);
  EXPECT_NEAR(r.primal[0], 3.0, 1e-12);
  EXPECT_NEAR(r.primal[1], 1.0, 1e-12);
  // Multipliers satisfy A'y <= c with equality on basic columns.
  EXPECT_NEAR(r.dual[0] + r.dual[1], -1.0, 1e-12);
  EXPECT_NEAR(r.dual[0] + 3 * r.dual[1], -2.0, 1e-12);
}

TEST(Simplex, DetectsInfeasible) {
  std::vector<Vector> a{{1, 1}};
  EXPECT_EQ(rs::lp::solve_standard_form(a, {-1}, {1, 1}).status, rs::lp::Status::infeasible);
}

TEST(Simplex, DetectsUnbounded) {
  std::vector<Vector> a{{1, -1}};
  EXPECT_EQ(rs::lp::solve_standard_form(a, {1}, {-1, 0}).status, rs::lp::Status::unbounded);
}

TEST(Simplex, NegativeRhsRowsFlipBack) {
  // -x1 + x2 = -2 with min x1 + x2: x = (2, 0), y = -1.
  std::vector<Vector> a{{-1, 1}};
  auto r = rs::lp::solve_standard_form(a, {-2}, {1, 1});
  ASSERT_EQ(r.status, rs::lp::Status::optimal);
  EXPECT_NEAR(r.objective, 2.0, 1e-12);
  EXPECT_NEAR(r.dual[0], -1.0, 1e-12);
}

TEST(Separate, TwoPointsMaxMargin) {
  auto cert = rs::separate({{0, 0}}, {{2, 0}}, 2);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->holds({{0, 0}}, {{2, 0}}));
  // Best |w|_inf <= 1 direction has w1 = 1: half the gap is 1.
  EXPECT_NEAR(cert->margin, 1.0, 1e-9);
  EXPECT_NEAR(cert->plane.w[0], 1.0, 1e-12);
}

TEST(Separate, XorIsInfeasible) {
  EXPECT_FALSE(rs::separate({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, 2));
}

TEST(Separate, OneDimensionalThreshold) {
  std::vector<Vector> pass{{0}, {-0.5}, {-3}}, kill{{1}, {2.5}, {7}};
  auto cert = rs::separate(pass, kill, 1);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->holds(pass, kill));
  EXPECT_NEAR(cert->plane.w[0], 1.0, 1e-12);
  EXPECT_NEAR(cert->plane.c, -0.5, 1e-12);
  EXPECT_NEAR(cert->margin, 0.5, 1e-12);
}

TEST(Separate, RejectsBadInput) {
  EXPECT_THROW(rs::separate({}, {{1}}, 1), rs::Error);
  EXPECT_THROW(rs::separate({{0, 0}}, {{1}}, 2), rs::Error);
}

TEST(Separate, MarginMatchesBruteForceInOneDimension) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vector> pass, kill;
    double split = u(rng);
    for (int i = 0; i < 6; ++i) {
      double a = u(rng), b = u(rng);
      (a < split ? pass : kill).push_back({a});
      (b < split ? pass : kill).push_back({b});
    }
    if (pass.empty() || kill.empty()) continue;
    double pmax = -1e9, kmin = 1e9;
    for (auto& x : pass) pmax = std::max(pmax, x[0]);
    for (auto& x : kill) kmin = std::min(kmin, x[0]);
    auto cert = rs::separate(pass, kill, 1);
    ASSERT_TRUE(cert);
    EXPECT_NEAR(cert->margin, 0.5 * (kmin - pmax), 1e-9);
  }
}

namespace {

rs::Polytope unit_box(double gamma) {
  rs::Polytope p;
  p.facets = {{{{1, 0}, -1}, gamma}, {{{-1, 0}, -1}, gamma}, {{{0, 1}, -1}, gamma}, {{{0, -1}, -1}, gamma}};
  return p;
}

}  // namespace

TEST(PolytopeContains, StrictInterior) {
  auto p = unit_box(0.1);
  EXPECT_EQ(rs::polytope_contains(p, Vector{0, 0}), rs::Membership::strictly_inside);
  EXPECT_EQ(rs::polytope_contains(p, Vector{10, 0}), rs::Membership::outside);
  EXPECT_EQ(rs::polytope_contains(p, Vector{0.95, 0}), rs::Membership::outside);
  EXPECT_EQ(rs::polytope_contains(p, Vector{0.85, -0.85}), rs::Membership::strictly_inside);
  EXPECT_THROW(rs::polytope_contains(p, Vector{0}), rs::Error);
}

TEST(BuildCover, XorPerPoint) {
  auto d = rs::testing::xor_dataset();
  auto cover = rs::build_cover(d, 1, rs::CoverStrategy::per_point);
  ASSERT_EQ(cover.polytopes.size(), 2u);
  for (const auto& p : cover.polytopes) EXPECT_EQ(p.facets.size(), 4u);
  for (std::size_t i = 0; i < d.size(); ++i) {
    int inside = 0;
    for (const auto& p : cover.polytopes) inside += rs::polytope_contains(p, d.points[i]) == rs::Membership::strictly_inside;
    EXPECT_EQ(inside, d.labels[i] == 1 ? 1 : 0) << "point " << i;
  }
  EXPECT_TRUE(rs::validate_cover(cover, d).ok());
}

TEST(BuildCover, SingleTargetGivesOneBox) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto d = rs::testing::random_dataset(40 + n, n, 2, 12);
    for (auto& l : d.labels) l = 2;
    d.labels[3] = 1;
    auto cover = rs::build_cover(d, 1, rs::CoverStrategy::greedy);
    ASSERT_EQ(cover.polytopes.size(), 1u);
    EXPECT_EQ(cover.polytopes[0].facets.size(), 2 * n);
    EXPECT_TRUE(rs::validate_cover(cover, d).ok());
  }
}

TEST(BuildCover, GreedyMergesCollinearTargets) {
  rs::LabeledDataset d{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 5}, {3, 5}}, {1, 1, 1, 1, 2, 2}, 2, 2};
  auto cover = rs::build_cover(d, 1, rs::CoverStrategy::greedy);
  EXPECT_EQ(cover.polytopes.size(), 1u);
  EXPECT_EQ(cover.members[0].size(), 4u);
  EXPECT_TRUE(rs::validate_cover(cover, d).ok());
}

TEST(BuildCover, GreedyStopsAtInterleavedPoint) {
  rs::LabeledDataset d{{{0}, {1}, {2}, {3}}, {1, 2, 1, 1}, 1, 2};
  auto cover = rs::build_cover(d, 1, rs::CoverStrategy::greedy);
  EXPECT_EQ(cover.polytopes.size(), 2u);
  EXPECT_TRUE(rs::validate_cover(cover, d).ok());
}

TEST(BuildCover, RandomDatasetsAreValid) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto d = rs::testing::random_dataset(seed, 1 + seed % 4, 3, 40);
    for (int label = 1; label <= 3; ++label) {
      for (auto strategy : {rs::CoverStrategy::per_point, rs::CoverStrategy::greedy}) {
        bool present = std::count(d.labels.begin(), d.labels.end(), label) > 0;
        if (!present) continue;
        auto cover = rs::build_cover(d, label, strategy);
        EXPECT_TRUE(rs::validate_cover(cover, d).ok()) << "seed " << seed;
      }
    }
  }
}

TEST(ValidateCover, DetectsContainment) {
  auto d = rs::testing::xor_dataset();
  auto cover = rs::build_cover(d, 1, rs::CoverStrategy::per_point);
  auto& box = cover.polytopes[0];
  // Move the upper-x facet of the box around (0, 0) past (1, 0).
  box.facets[0].plane.c = -1.5;
  auto report = rs::validate_cover(cover, d);
  EXPECT_EQ(report.count(rs::CoverViolation::Kind::containment), 1u);
  EXPECT_EQ(report.count(rs::CoverViolation::Kind::coverage), 0u);
}

TEST(ValidateCover, DetectsMissingTarget) {
  auto d = rs::testing::xor_dataset();
  auto cover = rs::build_cover(d, 1, rs::CoverStrategy::per_point);
  cover.polytopes.pop_back();
  cover.members.pop_back();
  auto report = rs::validate_cover(cover, d);
  EXPECT_EQ(report.count(rs::CoverViolation::Kind::coverage), 1u);
  EXPECT_EQ(report.count(rs::CoverViolation::Kind::containment), 0u);
}

TEST(Dataset, DuplicatesAndLabelsReported) {
  rs::LabeledDataset dup{{{0, 0}, {1, 1}, {0, 0}}, {1, 2, 2}, 2, 2};
  auto problems = rs::dataset_problems(dup);
  ASSERT_FALSE(problems.empty());
  EXPECT_NE(problems.front().find("rows 1 and 3"), std::string::npos);
  rs::LabeledDataset one{{{0}, {1}}, {1, 1}, 1, 1};
  EXPECT_THROW(rs::check_dataset(one), rs::Error);
}
