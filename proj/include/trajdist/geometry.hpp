#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajdist/error.hpp"

namespace trajdist {

/// Planar position in meters.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }
inline double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }

double euclidean(Point2D a, Point2D b);
bool is_finite(Point2D p);

/// Directed segment between two consecutive trajectory points. Zero-length
/// segments are allowed and behave like a single point.
struct Segment {
  Point2D a;
  Point2D b;

  double length() const { return euclidean(a, b); }
  Point2D at(double t) const { return a + t * (b - a); }
};

/// Ordered sequence of at least two finite points with optional strictly
/// increasing timestamps (seconds). Immutable once constructed.
class Trajectory {
 public:
  Trajectory(std::string id, std::vector<Point2D> points,
             std::optional<std::vector<double>> timestamps = std::nullopt);

  const std::string& id() const { return id_; }
  std::span<const Point2D> points() const { return points_; }
  const std::optional<std::vector<double>>& timestamps() const { return timestamps_; }
  std::size_t size() const { return points_.size(); }
  const Point2D& operator[](std::size_t i) const { return points_[i]; }

  std::size_t segment_count() const { return points_.size() - 1; }
  Segment segment(std::size_t i) const { return {points_[i], points_[i + 1]}; }

 private:
  std::string id_;
  std::vector<Point2D> points_;
  std::optional<std::vector<double>> timestamps_;
};

/// Segment list and total arc length of a trajectory's polyline carrier.
struct PiecewiseLinearView {
  std::vector<Segment> segments;
  double total_length = 0.0;

  static PiecewiseLinearView of(std::span<const Point2D> points);
  static PiecewiseLinearView of(const Trajectory& t) { return of(t.points()); }
};

/// Distance from `p` to the closest point of segment `s`.
double point_to_segment(Point2D p, const Segment& s);

/// Minimum of point_to_segment over the segments of a polyline with at least
/// two vertices. Throws InvalidInput otherwise.
double point_to_trajectory(Point2D p, std::span<const Point2D> polyline);
double point_to_trajectory(Point2D p, const Trajectory& t);

/// Largest segment length of a polyline (0 for fewer than two points).
double max_segment_length(std::span<const Point2D> points);

struct GeoOrigin {
  double lat = 0.0;
  double lon = 0.0;
};

inline constexpr double kEarthRadiusMeters = 6371000.0;

/// Local equirectangular projection about `origin`; x east, y north, meters.
Point2D project_wgs84(double lat, double lon, GeoOrigin origin);

}  // namespace trajdist
