#include "trajdist/warping.hpp"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace trajdist {
namespace {

using Points = std::vector<Point2D>;

const Points kLine2{{0, 0}, {1, 0}};
const Points kLine3{{0, 0}, {1, 0}, {2, 0}};

TEST(Dtw, Examples) {
  EXPECT_DOUBLE_EQ(dtw(kLine3, kLine3), 0.0);
  EXPECT_DOUBLE_EQ(dtw(kLine2, kLine3), 1.0);
  EXPECT_DOUBLE_EQ(dtw(Points{{0, 0}}, Points{{3, 4}}), 5.0);
  EXPECT_DOUBLE_EQ(oracle::dtw(kLine2, kLine3), 1.0);
}

TEST(Dtw, EmptyInputIsAnError) {
  EXPECT_THROW(dtw(Points{}, kLine2), InvalidInput);
  EXPECT_THROW(dtw(kLine2, Points{}), InvalidInput);
}

TEST(Dtw, GridPathMatchesDistance) {
  const Points a{{0, 0}, {1, 1}, {2, 0}, {3, 1}};
  const Points b{{0, 0}, {2, 0}, {3, 1}};
  const CostGrid grid = dtw_grid(a, b);
  EXPECT_DOUBLE_EQ(grid.at(grid.rows - 1, grid.cols - 1), dtw(a, b));
  const auto path = warping_path(grid);
  ASSERT_FALSE(path.empty());
  EXPECT_EQ(path.front(), std::make_pair(std::size_t{0}, std::size_t{0}));
  EXPECT_EQ(path.back(), std::make_pair(a.size() - 1, b.size() - 1));
  double sum = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    sum += euclidean(a[path[k].first], b[path[k].second]);
    if (k > 0) {
      const auto di = path[k].first - path[k - 1].first;
      const auto dj = path[k].second - path[k - 1].second;
      EXPECT_LE(di, 1u);
      EXPECT_LE(dj, 1u);
      EXPECT_GE(di + dj, 1u);
    }
  }
  EXPECT_DOUBLE_EQ(sum, dtw(a, b));
}

TEST(Dtw, TriangleInequalityWitness) {
  const Points a{{0, 0}, {0, 0}};
  const Points b{{0, 0}, {2, 0}};
  const Points c{{0, 0}, {2, 0}, {2, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(dtw(a, b), 2.0);
  EXPECT_DOUBLE_EQ(dtw(b, c), 0.0);
  EXPECT_DOUBLE_EQ(dtw(a, c), 6.0);
  EXPECT_GT(dtw(a, c), dtw(a, b) + dtw(b, c));
}

TEST(Lcss, Examples) {
  const WarpingParams p{0.1, {}};
  EXPECT_EQ(lcss(kLine3, kLine3, p), 3u);
  EXPECT_EQ(lcss(kLine2, Points{{0, 0}, {5, 5}}, {0.5, {}}), 1u);
  EXPECT_EQ(lcss(kLine2, Points{}, p), 0u);
  EXPECT_EQ(lcss(Points{}, kLine2, p), 0u);
}

TEST(Lcss, ThresholdIsStrict) {
  EXPECT_EQ(lcss(Points{{0, 0}}, Points{{1, 0}}, {1.0, {}}), 0u);
  EXPECT_EQ(lcss(Points{{0, 0}}, Points{{1, 0}}, {1.0000001, {}}), 1u);
  EXPECT_EQ(lcss(kLine2, kLine2, {0.0, {}}), 0u);
}

TEST(Lcss, RejectsNegativeThreshold) { EXPECT_THROW(lcss(kLine2, kLine2, {-1.0, {}}), InvalidInput); }

TEST(Dlcss, Examples) {
  EXPECT_DOUBLE_EQ(dlcss(kLine3, kLine3, {0.1, {}}), 0.0);
  EXPECT_DOUBLE_EQ(dlcss(kLine2, Points{{10, 10}, {11, 10}}, {0.5, {}}), 1.0);
  EXPECT_DOUBLE_EQ(dlcss(kLine2, Points{{0, 0}, {5, 5}}, {0.5, {}}), 0.5);
  EXPECT_THROW(dlcss(Points{}, kLine2, {0.5, {}}), InvalidInput);
}

TEST(Edr, Examples) {
  EXPECT_EQ(edr(kLine3, kLine3, {0.1, {}}), 0u);
  EXPECT_EQ(edr(kLine2, kLine3, {0.5, {}}), 1u);
  EXPECT_EQ(edr(Points{}, kLine3, {0.5, {}}), 3u);
  EXPECT_EQ(edr(kLine3, Points{}, {0.5, {}}), 3u);
  EXPECT_EQ(oracle::edr(kLine2, kLine3, 0.5), 1u);
}

TEST(Edr, BoundedByLongerLength) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const auto a = oracle::random_trajectory(rng, 1, 9);
    const auto b = oracle::random_trajectory(rng, 1, 9);
    EXPECT_LE(edr(a, b, {2.0, {}}), std::max(a.size(), b.size()));
  }
}

TEST(Erp, Examples) {
  const WarpingParams origin_gap{0.0, {0, 0}};
  EXPECT_DOUBLE_EQ(erp(Points{}, Points{{3, 4}}, origin_gap), 5.0);
  EXPECT_DOUBLE_EQ(erp(Points{{3, 4}}, Points{}, origin_gap), 5.0);
  EXPECT_DOUBLE_EQ(erp(kLine3, kLine3, origin_gap), 0.0);
  EXPECT_DOUBLE_EQ(erp(Points{{0, 0}}, kLine2, origin_gap), 1.0);
  EXPECT_DOUBLE_EQ(oracle::erp(Points{{0, 0}}, kLine2, {0, 0}), 1.0);
}

TEST(Erp, GapPointMatters) {
  const WarpingParams far_gap{0.0, {10, 0}};
  // (0,0) pairs with (0,0); (1,0) is left to pay 9 against the gap.
  EXPECT_DOUBLE_EQ(erp(Points{{0, 0}}, kLine2, far_gap), 9.0);
}

TEST(Warping, SymmetricOnRandomPairs) {
  std::mt19937_64 rng(22);
  const WarpingParams p{3.0, {0.5, -0.5}};
  for (int k = 0; k < 200; ++k) {
    const auto a = oracle::random_trajectory(rng, 1, 12);
    const auto b = oracle::random_trajectory(rng, 1, 12);
    EXPECT_NEAR(dtw(a, b), dtw(b, a), 1e-9 * std::max(1.0, dtw(a, b)));
    EXPECT_NEAR(erp(a, b, p), erp(b, a, p), 1e-9 * std::max(1.0, erp(a, b, p)));
    EXPECT_EQ(lcss(a, b, p), lcss(b, a, p));
    EXPECT_EQ(edr(a, b, p), edr(b, a, p));
    EXPECT_DOUBLE_EQ(dlcss(a, b, p), dlcss(b, a, p));
  }
}

TEST(Warping, ZeroOnIdenticalInputs) {
  std::mt19937_64 rng(23);
  const WarpingParams p{0.01, {}};
  for (int k = 0; k < 50; ++k) {
    const auto a = oracle::random_trajectory(rng, 1, 12);
    EXPECT_EQ(dtw(a, a), 0.0);
    EXPECT_EQ(erp(a, a, p), 0.0);
    EXPECT_EQ(edr(a, a, p), 0u);
    EXPECT_EQ(dlcss(a, a, p), 0.0);
  }
}

TEST(Erp, TriangleInequality) {
  std::mt19937_64 rng(24);
  const WarpingParams p{0.0, {0, 0}};
  for (int k = 0; k < 500; ++k) {
    const auto a = oracle::random_trajectory(rng, 1, 7);
    const auto b = oracle::random_trajectory(rng, 1, 7);
    const auto c = oracle::random_trajectory(rng, 1, 7);
    EXPECT_LE(erp(a, c, p), erp(a, b, p) + erp(b, c, p) + 1e-9);
  }
}

// Exhaustive agreement with path/alignment enumeration for every pair of
// 1- and 2-point sequences on the 3x3 grid plus random longer ones; the
// acceptance suite covers lengths up to 4.
TEST(Warping, AgreesWithEnumerationOnSmallGrid) {
  std::vector<Points> shapes;
  for (int p = 0; p < 9; ++p) shapes.push_back({{double(p % 3), double(p / 3)}});
  for (int p = 0; p < 9; ++p) {
    for (int q = 0; q < 9; ++q) shapes.push_back({{double(p % 3), double(p / 3)}, {double(q % 3), double(q / 3)}});
  }
  const double eps = 1.2;
  const Point2D gap{1, 1};
  for (const auto& a : shapes) {
    for (const auto& b : shapes) {
      ASSERT_EQ(dtw(a, b), oracle::dtw(a, b));
      ASSERT_EQ(lcss(a, b, {eps, gap}), oracle::lcss(a, b, eps));
      ASSERT_EQ(edr(a, b, {eps, gap}), oracle::edr(a, b, eps));
      ASSERT_EQ(erp(a, b, {eps, gap}), oracle::erp(a, b, gap));
    }
  }
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> cell(0, 2);
  std::uniform_int_distribution<std::size_t> len(3, 5);
  for (int k = 0; k < 300; ++k) {
    Points a, b;
    for (std::size_t i = len(rng); i > 0; --i) a.push_back({double(cell(rng)), double(cell(rng))});
    for (std::size_t i = len(rng); i > 0; --i) b.push_back({double(cell(rng)), double(cell(rng))});
    ASSERT_EQ(dtw(a, b), oracle::dtw(a, b));
    ASSERT_EQ(lcss(a, b, {eps, gap}), oracle::lcss(a, b, eps));
    ASSERT_EQ(edr(a, b, {eps, gap}), oracle::edr(a, b, eps));
    ASSERT_EQ(erp(a, b, {eps, gap}), oracle::erp(a, b, gap));
  }
}

}  // namespace
}  // namespace trajdist
