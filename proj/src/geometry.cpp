#include "trajdist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace trajdist {

double euclidean(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Trajectory::Trajectory(std::string id, std::vector<Point2D> points,
                       std::optional<std::vector<double>> timestamps)
    : id_(std::move(id)), points_(std::move(points)), timestamps_(std::move(timestamps)) {
  if (points_.size() < 2) {
    throw InvalidInput("trajectory '" + id_ + "' needs at least 2 points, got " +
                       std::to_string(points_.size()));
  }
  for (const auto& p : points_) {
    if (!is_finite(p)) throw InvalidInput("trajectory '" + id_ + "' has a non-finite point");
  }
  if (timestamps_) {
    const auto& ts = *timestamps_;
    if (ts.size() != points_.size()) {
      throw InvalidInput("trajectory '" + id_ + "' has " + std::to_string(ts.size()) +
                         " timestamps for " + std::to_string(points_.size()) + " points");
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!std::isfinite(ts[i]) || (i > 0 && !(ts[i] > ts[i - 1]))) {
        throw InvalidInput("trajectory '" + id_ + "' timestamps not strictly increasing at index " +
                           std::to_string(i));
      }
    }
  }
}

PiecewiseLinearView PiecewiseLinearView::of(std::span<const Point2D> points) {
  PiecewiseLinearView view;
  if (points.size() < 2) return view;
  view.segments.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    view.segments.push_back({points[i], points[i + 1]});
    view.total_length += view.segments.back().length();
  }
  return view;
}

double point_to_segment(Point2D p, const Segment& s) {
  const Point2D d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return euclidean(p, s.a);
  const double t = dot(p - s.a, d) / len2;
  if (t <= 0.0) return euclidean(p, s.a);
  if (t >= 1.0) return euclidean(p, s.b);
  return euclidean(p, s.at(t));
}

double point_to_trajectory(Point2D p, std::span<const Point2D> polyline) {
  if (polyline.size() < 2) {
    throw InvalidInput("point_to_trajectory needs a polyline with at least 2 points");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    best = std::min(best, point_to_segment(p, {polyline[i], polyline[i + 1]}));
  }
  return best;
}

double point_to_trajectory(Point2D p, const Trajectory& t) { return point_to_trajectory(p, t.points()); }

double max_segment_length(std::span<const Point2D> points) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    best = std::max(best, euclidean(points[i], points[i + 1]));
  }
  return best;
}

Point2D project_wgs84(double lat, double lon, GeoOrigin origin) {
  auto in_range = [](double la, double lo) {
    return std::isfinite(la) && std::isfinite(lo) && std::abs(la) <= 90.0 && std::abs(lo) <= 180.0;
  };
  if (!in_range(lat, lon)) {
    throw InvalidInput("coordinate out of range: lat=" + std::to_string(lat) +
                       " lon=" + std::to_string(lon));
  }
  if (!in_range(origin.lat, origin.lon)) throw InvalidInput("projection origin out of range");
  constexpr double kDeg = std::numbers::pi / 180.0;
  return {kEarthRadiusMeters * (lon - origin.lon) * std::cos(origin.lat * kDeg) * kDeg,
          kEarthRadiusMeters * (lat - origin.lat) * kDeg};
}

}  // namespace trajdist
