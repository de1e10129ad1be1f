#include <gtest/gtest.h>

#include <random>

#include "gazesweep/grid.hpp"

using namespace gazesweep;

namespace {

Grid checkerboard2() { return Grid(2, 2, {0.0, 255.0, 255.0, 0.0}); }

}  // namespace

TEST(Grid, SampleBilinearHandWeights) {
  const Grid g = checkerboard2();
  EXPECT_DOUBLE_EQ(sample_bilinear(g, 0.5, 0.5), 127.5);
  EXPECT_DOUBLE_EQ(sample_bilinear(g, 0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(sample_bilinear(g, 1.0, 0.0), 255.0);
  // 0.25 in x and y: weights 9/16, 3/16, 3/16, 1/16 on 0, 255, 255, 0.
  EXPECT_DOUBLE_EQ(sample_bilinear(g, 0.25, 0.25), 6.0 / 16.0 * 255.0);
  // Outside the grid clamps to the border.
  EXPECT_DOUBLE_EQ(sample_bilinear(g, -3.0, -3.0), 0.0);
  EXPECT_DOUBLE_EQ(sample_bilinear(g, 5.0, -1.0), 255.0);
}

TEST(Grid, ResizeCheckerboardTo4x4) {
  const Grid out = resize_bilinear(checkerboard2(), 4, 4);
  ASSERT_EQ(out.width(), 4);
  ASSERT_EQ(out.height(), 4);
  // Output pixel i maps to source (i + 0.5) / 2 - 0.5: -0.25, 0.25, 0.75, 1.25.
  const double src[4] = {0.0, 0.25, 0.75, 1.0};  // after clamping
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double fx = src[c];
      const double fy = src[r];
      const double expect = 255.0 * (fx * (1 - fy) + (1 - fx) * fy);
      EXPECT_NEAR(out.at(r, c), expect, 1e-12) << r << "," << c;
    }
  EXPECT_DOUBLE_EQ(out.at(1, 1), 95.625);
}

TEST(Grid, ResizeCheckerboardTo3x3CentreIsMidpoint) {
  const Grid out = resize_bilinear(checkerboard2(), 3, 3);
  EXPECT_DOUBLE_EQ(out.at(1, 1), 127.5);
}

TEST(Grid, SameSizeResizeIsIdentity) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Grid g(7, 5);
  for (double& v : g.values()) v = u(rng);
  EXPECT_EQ(resize_bilinear(g, 7, 5), g);
}

TEST(Grid, ResizeStaysWithinInputRange) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Grid g(3 + trial % 5, 4 + trial % 3);
    for (double& v : g.values()) v = u(rng);
    const Grid out = resize_bilinear(g, 2 + trial * 3, 17 - trial % 9);
    for (double v : out.values()) {
      EXPECT_GE(v, g.min());
      EXPECT_LE(v, g.max());
    }
  }
}

TEST(Grid, ResizeCommutesWithRotation) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid g(13, 9);
  for (double& v : g.values()) v = u(rng);
  const Grid a = rotate180(resize_bilinear(g, 7, 5));
  const Grid b = resize_bilinear(rotate180(g), 7, 5);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-12);
}

TEST(Grid, Rotate180) {
  const Grid g(3, 2, {1, 2, 3, 4, 5, 6});
  const Grid r = rotate180(g);
  EXPECT_EQ(r, Grid(3, 2, {6, 5, 4, 3, 2, 1}));
  EXPECT_EQ(rotate180(r), g);
}

TEST(Grid, Reductions) {
  const Grid g(2, 2, {1.0, -2.0, 4.0, 0.5});
  EXPECT_EQ(g.max(), 4.0);
  EXPECT_EQ(g.min(), -2.0);
  EXPECT_EQ(g.sum(), 3.5);
}
