#include "trajdist/sspd.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "trajdist/shape.hpp"

namespace trajdist {
namespace {

using Points = std::vector<Point2D>;

TEST(Spd, Examples) {
  const Points bottom{{0, 0}, {2, 0}}, top{{0, 1}, {2, 1}};
  EXPECT_DOUBLE_EQ(spd(bottom, top), 1.0);
  EXPECT_DOUBLE_EQ(sspd(bottom, top), 1.0);
  const Points carrier{{0, 0}, {10, 0}, {10, 10}};
  const Points middle{{4, 0}, {10, 0}, {10, 5}};
  EXPECT_DOUBLE_EQ(spd(middle, carrier), 0.0);
  // Vertices (0,0), (10,0), (10,10) sit 4, 0 and 5 away from `middle`.
  EXPECT_DOUBLE_EQ(spd(carrier, middle), 3.0);
  EXPECT_DOUBLE_EQ(sspd(carrier, middle), 1.5);
}

TEST(Spd, RejectsShortInput) {
  const Points one{{0, 0}}, two{{0, 0}, {1, 0}};
  EXPECT_NO_THROW(spd(one, two));
  EXPECT_THROW(spd(two, one), InvalidInput);
  EXPECT_THROW(sspd(one, two), InvalidInput);
}

TEST(Spd, ZeroOnSubTrajectories) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    const auto poly = oracle::random_trajectory(rng, 2, 8);
    const auto sub = oracle::sub_trajectory(rng, poly, 2 + k % 6);
    EXPECT_NEAR(spd(sub, poly), 0.0, 1e-9) << "pair " << k;
  }
}

TEST(Sspd, ZeroOnSameCarrier) {
  const Points coarse{{0, 0}, {4, 0}, {4, 4}};
  const Points fine{{0, 0}, {1, 0}, {4, 0}, {4, 2}, {4, 4}};
  EXPECT_EQ(sspd(coarse, fine), 0.0);
}

TEST(Sspd, SymmetricExactly) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 500; ++k) {
    const auto a = oracle::random_trajectory(rng, 2, 10);
    const auto b = oracle::random_trajectory(rng, 2, 10);
    EXPECT_EQ(sspd(a, b), sspd(b, a));
  }
}

TEST(Sspd, TriangleInequalityWitness) {
  const Points a{{0, 0}, {1, 0}};
  const Points c{{0, 1}, {1, 1}};
  const Points b{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_DOUBLE_EQ(sspd(a, c), 1.0);
  EXPECT_DOUBLE_EQ(sspd(a, b), 0.25);
  EXPECT_DOUBLE_EQ(sspd(b, c), 0.25);
  EXPECT_GT(sspd(a, c), sspd(a, b) + sspd(b, c));
}

TEST(Sspd, BoundedByHausdorff) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 500; ++k) {
    const auto a = oracle::random_trajectory(rng, 2, 10);
    const auto b = oracle::random_trajectory(rng, 2, 10);
    EXPECT_LE(sspd(a, b), hausdorff(a, b) + 1e-9);
  }
}

// Two near-parallel routes, one with a short detour, and a third route farther
// away. Hausdorff is driven by the detour and barely separates the pairs.
TEST(Sspd, DiscriminatesWhereHausdorffDoesNot) {
  const Points t1{{0, 0}, {100, 0}};
  const Points t2{{0, 5}, {45, 5}, {50, 60}, {55, 5}, {100, 5}};
  const Points t3{{0, 50}, {100, 50}};
  const double s12 = sspd(t1, t2), s13 = sspd(t1, t3), s23 = sspd(t2, t3);
  EXPECT_DOUBLE_EQ(s12, 10.5);
  EXPECT_DOUBLE_EQ(s13, 50.0);
  EXPECT_DOUBLE_EQ(s23, 41.5);
  EXPECT_GE(std::min(s13, s23), 2.0 * s12);
  const double h12 = hausdorff(t1, t2), h13 = hausdorff(t1, t3), h23 = hausdorff(t2, t3);
  EXPECT_DOUBLE_EQ(h12, 60.0);
  EXPECT_DOUBLE_EQ(h13, 50.0);
  EXPECT_DOUBLE_EQ(h23, 45.0);
  EXPECT_LE(std::max({h12, h13, h23}), 1.5 * std::min({h12, h13, h23}));
  EXPECT_GE(h12, 0.8 * h13);
}

}  // namespace
}  // namespace trajdist
