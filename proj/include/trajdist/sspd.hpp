#pragma once

#include <span>

#include "trajdist/geometry.hpp"

namespace trajdist {

/// Segment-path distance: mean over the observed vertices of `from` of their
/// distance to the polyline `to`. Directional; zero whenever every vertex of
/// `from` lies on the carrier of `to`.
double spd(std::span<const Point2D> from, std::span<const Point2D> to);
double spd(const Trajectory& from, const Trajectory& to);

/// Symmetrized segment-path distance, the mean of both directions.
double sspd(std::span<const Point2D> a, std::span<const Point2D> b);
double sspd(const Trajectory& a, const Trajectory& b);

}  // namespace trajdist
