#include "trajdist/geometry.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace trajdist {
namespace {

TEST(PointToSegment, InteriorProjection) {
  EXPECT_DOUBLE_EQ(point_to_segment({1, 1}, {{0, 0}, {2, 0}}), 1.0);
}

TEST(PointToSegment, ProjectionOutsideUsesNearestEndpoint) {
  EXPECT_DOUBLE_EQ(point_to_segment({3, 0}, {{0, 0}, {2, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(point_to_segment({-3, 4}, {{0, 0}, {2, 0}}), 5.0);
}

TEST(PointToSegment, DegenerateSegmentIsAPoint) {
  EXPECT_DOUBLE_EQ(point_to_segment({0, 0}, {{0, 0}, {0, 0}}), 0.0);
  EXPECT_DOUBLE_EQ(point_to_segment({3, 4}, {{0, 0}, {0, 0}}), 5.0);
}

TEST(PointToSegment, NeverExceedsEndpointDistances) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 1000; ++k) {
    const Point2D p{u(rng), u(rng)};
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const double d = point_to_segment(p, s);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, std::min(euclidean(p, s.a), euclidean(p, s.b)) + 1e-12);
  }
}

TEST(PointToSegment, ZeroExactlyOnTheSegment) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-5, 5), t(0, 1);
  for (int k = 0; k < 200; ++k) {
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    EXPECT_LT(point_to_segment(s.at(t(rng)), s), 1e-9);
    // Offset along the normal by 1e-6 is detected.
    const Point2D d = s.b - s.a;
    const double len = std::hypot(d.x, d.y);
    const Point2D off = s.at(0.5) + Point2D{-d.y / len * 1e-6, d.x / len * 1e-6};
    EXPECT_GT(point_to_segment(off, s), 1e-9);
  }
}

TEST(PointToTrajectory, Examples) {
  const Trajectory t("t", {{0, 0}, {2, 0}, {2, 2}});
  EXPECT_DOUBLE_EQ(point_to_trajectory({2, 0}, t), 0.0);
  EXPECT_DOUBLE_EQ(point_to_trajectory({1, 1}, t), 1.0);
  EXPECT_DOUBLE_EQ(point_to_trajectory({5, 0}, Trajectory("u", {{0, 0}, {2, 0}})), 3.0);
}

TEST(PointToTrajectory, RejectsShortPolyline) {
  const std::vector<Point2D> one{{0, 0}};
  EXPECT_THROW(point_to_trajectory({1, 1}, one), InvalidInput);
}

TEST(PointToTrajectory, MatchesDenseSamplingOracle) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 100; ++k) {
    const auto poly = oracle::random_trajectory(rng, 2, 6, 1.0);
    const auto samples = oracle::sample_uniform(poly, 10000);
    const Point2D p{u(rng), u(rng)};
    const double expected = oracle::nearest_sample(p, samples);
    EXPECT_NEAR(point_to_trajectory(p, poly), expected, 1e-6 * expected) << "instance " << k;
  }
}

TEST(Trajectory, RejectsInvalidInput) {
  EXPECT_THROW(Trajectory("a", {{0, 0}}), InvalidInput);
  EXPECT_THROW(Trajectory("a", {{0, 0}, {NAN, 1}}), InvalidInput);
  EXPECT_THROW(Trajectory("a", {{0, 0}, {1, 1}}, std::vector<double>{1.0, 1.0}), InvalidInput);
  EXPECT_THROW(Trajectory("a", {{0, 0}, {1, 1}}, std::vector<double>{1.0}), InvalidInput);
  EXPECT_NO_THROW(Trajectory("a", {{0, 0}, {0, 0}}, std::vector<double>{1.0, 2.0}));
}

TEST(PiecewiseLinearView, LengthInvariantUnderRigidMotion) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> angle(0, 6.283), shift(-1e3, 1e3);
  for (int k = 0; k < 100; ++k) {
    const auto poly = oracle::random_trajectory(rng, 2, 10, 50.0);
    const auto moved = oracle::rigid(poly, angle(rng), {shift(rng), shift(rng)});
    const auto a = PiecewiseLinearView::of(poly), b = PiecewiseLinearView::of(moved);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) sum += oracle::dist(poly[i], poly[i + 1]);
    EXPECT_NEAR(a.total_length, sum, 1e-9 * sum);
    EXPECT_NEAR(a.total_length, b.total_length, 1e-9 * a.total_length);
    EXPECT_EQ(a.segments.size(), poly.size() - 1);
  }
}

TEST(ProjectWgs84, OriginMapsToZero) {
  const Point2D p = project_wgs84(37.77, -122.42, {37.77, -122.42});
  EXPECT_DOUBLE_EQ(p.x, 0.0);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
}

TEST(ProjectWgs84, OneDegreeOffsets) {
  const double one_degree = kEarthRadiusMeters * M_PI / 180.0;  // 111194.93 m
  EXPECT_NEAR(one_degree, 111194.9, 0.05);
  const Point2D east = project_wgs84(0.0, 1.0, {0.0, 0.0});
  EXPECT_NEAR(east.x, one_degree, 1e-6);
  EXPECT_DOUBLE_EQ(east.y, 0.0);
  const Point2D north = project_wgs84(38.0, -122.0, {37.0, -122.0});
  EXPECT_DOUBLE_EQ(north.x, 0.0);
  EXPECT_NEAR(north.y, one_degree, 1e-6);
  // Longitude shrinks with cos(origin latitude).
  const Point2D east60 = project_wgs84(60.0, 1.0, {60.0, 0.0});
  EXPECT_NEAR(east60.x, 0.5 * one_degree, 1e-6);
}

TEST(ProjectWgs84, RejectsOutOfRange) {
  EXPECT_THROW(project_wgs84(91.0, 0.0, {0, 0}), InvalidInput);
  EXPECT_THROW(project_wgs84(0.0, -180.5, {0, 0}), InvalidInput);
}

}  // namespace
}  // namespace trajdist
