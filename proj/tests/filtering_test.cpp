#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gmhbt/design.hpp"
#include "gmhbt/filtering.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace gmhbt {
namespace {

TEST(Convolve2d, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const RealMap img(testing::random_image(rng, 8, 8));
    const Kernel2D k = testing::random_kernel(rng, trial % 2 ? 5 : 3);
    for (auto mode : {BoundaryMode::replicate, BoundaryMode::zero}) {
      EXPECT_LE(oracle::max_abs_diff(convolve2d(img, k, mode), oracle::convolve(img, k, mode)),
                1e-12);
    }
  }
}

TEST(Convolve2d, FlipsTheKernel) {
  // Impulse image reproduces the kernel itself, not its mirror.
  RealMap img(7, 7, 0.0);
  img(3, 3) = 1.0;
  Kernel2D k(3);
  k.at(-1, 1) = 1.0;  // response lands at (row - 1, col + 1)
  const RealMap out = convolve2d(img, k, BoundaryMode::zero);
  EXPECT_EQ(out(2, 4), 1.0);
  EXPECT_EQ(out(4, 2), 0.0);
}

TEST(Convolve2d, DeltaIsIdentity) {
  std::mt19937_64 rng(102);
  const GrayImage img = testing::random_image(rng, 11, 9);
  for (auto mode : {BoundaryMode::replicate, BoundaryMode::zero}) {
    EXPECT_EQ(convolve2d(img, Kernel2D::delta(5), mode), RealMap(img));
  }
}

TEST(Convolve2d, BoxOnConstant) {
  const RealMap out =
      convolve2d(testing::constant_image(10, 10, 90), Kernel2D(3, 1.0 / 9.0));
  for (double v : out.values()) EXPECT_NEAR(v, 90.0, 1e-12);
}

TEST(Convolve2d, KernelTooLarge) {
  EXPECT_THROW(convolve2d(GrayImage(5, 20), Kernel2D(5)), KernelTooLarge);
  EXPECT_THROW(convolve2d(GrayImage(20, 3), Kernel2D(5)), KernelTooLarge);
  EXPECT_NO_THROW(convolve2d(GrayImage(6, 6), Kernel2D(5)));
}

TEST(Convolve2d, Linear) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const RealMap a = testing::random_map(rng, 12, 10, 100.0);
    const RealMap b = testing::random_map(rng, 12, 10, 100.0);
    const Kernel2D k = testing::random_kernel(rng, 5);
    const double alpha = 1.7, beta = -0.6;
    RealMap mix(12, 10);
    for (std::size_t i = 0; i < mix.size(); ++i)
      mix.values()[i] = alpha * a.values()[i] + beta * b.values()[i];
    for (auto mode : {BoundaryMode::replicate, BoundaryMode::zero}) {
      const RealMap lhs = convolve2d(mix, k, mode);
      const RealMap ca = convolve2d(a, k, mode), cb = convolve2d(b, k, mode);
      for (std::size_t i = 0; i < lhs.size(); ++i)
        EXPECT_NEAR(lhs.values()[i], alpha * ca.values()[i] + beta * cb.values()[i], 1e-10);
    }
  }
}

TEST(Convolve2d, ZeroSumKernelKillsConstants) {
  const Kernel2D designed = design_gmhbt_hp(DesignSpec{});
  const Kernel2D log = log_kernel(5, 1.0);
  for (const Kernel2D* k : {&designed, &log}) {
    const RealMap out = convolve2d(testing::constant_image(16, 12, 173), *k);
    for (double v : out.values()) EXPECT_NEAR(v, 0.0, 1e-10);
  }
}

TEST(LogKernel, ZeroSumAndSymmetric) {
  for (int size : {3, 5, 7, 9}) {
    const Kernel2D k = log_kernel(size, default_log_sigma(size));
    EXPECT_NEAR(k.sum(), 0.0, 1e-14);
    EXPECT_TRUE(k.has_octagonal_symmetry());
  }
  EXPECT_THROW(log_kernel(4, 1.0), InvalidSpec);
  EXPECT_THROW(log_kernel(5, 0.0), InvalidSpec);
}

TEST(LogKernel, CenterIsUniqueMinimum) {
  const Kernel2D k = log_kernel(5, 1.0);
  // Analytic value before mean removal is -1/pi at r = 0.
  EXPECT_LT(k.at(0, 0), 0.0);
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      if (i || j) {
        EXPECT_GT(k.at(i, j), k.at(0, 0));
      }
}

TEST(ThresholdEdges, FractionOneMarksNothing) {
  std::mt19937_64 rng(104);
  const GrayImage e = threshold_edges(testing::random_map(rng, 9, 9, 50.0), 1.0);
  for (auto p : e.pixels()) EXPECT_EQ(p, 0);
}

TEST(ThresholdEdges, FractionZeroMarksNonzero) {
  RealMap m(4, 1, std::vector<double>{0.0, -3.0, 1e-9, 0.0});
  const GrayImage e = threshold_edges(m, 0.0);
  EXPECT_EQ(e.pixels()[0], 0);
  EXPECT_EQ(e.pixels()[1], 255);
  EXPECT_EQ(e.pixels()[2], 255);
  EXPECT_EQ(e.pixels()[3], 0);
}

TEST(ThresholdEdges, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMap m = testing::random_map(rng, 10, 10, 20.0);
    RealMap scaled = m;
    for (auto& v : scaled.values()) v *= 3.7;
    EXPECT_EQ(threshold_edges(m, 0.4), threshold_edges(scaled, 0.4));
  }
}

TEST(ThresholdEdges, StepEdgeStaysNearTheStep) {
  const Kernel2D k = design_gmhbt_hp(DesignSpec{});
  const GrayImage step = testing::step_image(32, 24, 0, 200);
  const GrayImage e = threshold_edges(convolve2d(step, k), 0.5);
  int lo = 32, hi = -1;
  for (int r = 0; r < e.height(); ++r)
    for (int c = 0; c < e.width(); ++c)
      if (e(r, c)) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
  ASSERT_GE(hi, 0) << "nothing marked";
  EXPECT_LE(hi - lo + 1, k.size());
  EXPECT_LE(lo, 16);
  EXPECT_GE(hi, 15);
}

TEST(Sharpen, ZeroLambdaIsIdentity) {
  std::mt19937_64 rng(106);
  const GrayImage img = testing::random_image(rng, 10, 10);
  EXPECT_EQ(sharpen(img, testing::random_map(rng, 10, 10, 300.0), 0.0), img);
}

TEST(Sharpen, ConstantImageUnchanged) {
  const GrayImage img = testing::constant_image(12, 12, 77);
  const RealMap hf = convolve2d(img, design_gmhbt_hp(DesignSpec{}));
  for (double lambda : {0.5, 1.0, 10.0}) EXPECT_EQ(sharpen(img, hf, lambda), img);
}

TEST(Sharpen, StepOvershoots) {
  const GrayImage step = testing::step_image(32, 16, 40, 200);
  const GrayImage out =
      sharpen(step, convolve2d(step, design_gmhbt_hp(DesignSpec{})), 1.0);
  const auto px = out.pixels();
  EXPECT_GT(*std::max_element(px.begin(), px.end()), 200);
  EXPECT_LT(*std::min_element(px.begin(), px.end()), 40);
}

TEST(Sharpen, MonotoneInLambdaWherePositive) {
  std::mt19937_64 rng(107);
  const GrayImage img = testing::random_image(rng, 16, 16);
  const RealMap hf = convolve2d(img, design_gmhbt_hp(DesignSpec{}));
  GrayImage prev = sharpen(img, hf, 0.0);
  for (double lambda = 0.25; lambda <= 4.0; lambda += 0.25) {
    const GrayImage cur = sharpen(img, hf, lambda);
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (hf.values()[i] > 0) {
        EXPECT_GE(cur.pixels()[i], prev.pixels()[i]);
      }
    prev = cur;
  }
}

TEST(Sharpen, Errors) {
  EXPECT_THROW(sharpen(GrayImage(4, 4), RealMap(4, 5), 1.0), DimensionMismatch);
  EXPECT_THROW(sharpen(GrayImage(4, 4), RealMap(4, 4), -1.0), InvalidSpec);
}

}  // namespace
}  // namespace gmhbt
