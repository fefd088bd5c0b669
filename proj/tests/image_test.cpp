#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gmhbt/image.hpp"
#include "test_support.hpp"

namespace gmhbt {
namespace {

TEST(GrayImage, RejectsBadShapes) {
  EXPECT_THROW(GrayImage(0, 3), DimensionMismatch);
  EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>(3)), DimensionMismatch);
  GrayImage img(3, 2, 7);
  EXPECT_EQ(img.size(), 6u);
  EXPECT_EQ(img(1, 2), 7);
}

TEST(Quantize, AbsoluteClampsMagnitude) {
  RealMap m(1, 1, -300.0);
  EXPECT_EQ(quantize(m, QuantizeMode::absolute)(0, 0), 255);
}

TEST(Quantize, Offset128OfZero) {
  RealMap m(1, 1, 0.0);
  EXPECT_EQ(quantize(m, QuantizeMode::offset128)(0, 0), 128);
}

TEST(Quantize, ZeroMapIsBlack) {
  const GrayImage q = quantize(RealMap(4, 3, 0.0));
  for (auto p : q.pixels()) EXPECT_EQ(p, 0);
}

TEST(Quantize, RoundsHalfAwayFromZero) {
  RealMap m(4, 1, std::vector<double>{0.5, 2.5, -2.5, 254.5});
  const GrayImage abs = quantize(m, QuantizeMode::absolute);
  EXPECT_EQ(abs(0, 0), 1);
  EXPECT_EQ(abs(0, 1), 3);
  EXPECT_EQ(abs(0, 2), 3);
  EXPECT_EQ(abs(0, 3), 255);
  const GrayImage off = quantize(RealMap(2, 1, std::vector<double>{-0.5, 0.5}),
                                 QuantizeMode::offset128);
  EXPECT_EQ(off(0, 0), 128);  // 127.5 -> 128
  EXPECT_EQ(off(0, 1), 129);  // 128.5 -> 129
}

TEST(Quantize, RejectsNonFinite) {
  RealMap m(2, 1, 0.0);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(quantize(m), NonFiniteValue);
  m(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(quantize(m, QuantizeMode::offset128), NonFiniteValue);
}

TEST(Quantize, AbsoluteIsEvenAndOutputIsValid) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    RealMap m = testing::random_map(rng, 9, 7, 600.0);
    RealMap neg = m;
    for (auto& v : neg.values()) v = -v;
    const GrayImage a = quantize(m, QuantizeMode::absolute);
    EXPECT_EQ(a, quantize(neg, QuantizeMode::absolute));
    const GrayImage b = quantize(m, QuantizeMode::offset128);
    EXPECT_EQ(a.size(), m.size());
    EXPECT_EQ(b.width(), 9);
    EXPECT_EQ(b.height(), 7);
  }
}

TEST(CenterCrop, TakesMiddleAndKeepsSmallImages) {
  GrayImage img(6, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 6; ++c) img(r, c) = static_cast<std::uint8_t>(r * 10 + c);
  const GrayImage crop = center_crop(img, 2, 2);
  EXPECT_EQ(crop.width(), 2);
  EXPECT_EQ(crop(0, 0), 12);
  EXPECT_EQ(crop(1, 1), 23);
  EXPECT_EQ(center_crop(img, 128, 128), img);
}

}  // namespace
}  // namespace gmhbt
