#include "trajdist/sspd.hpp"

namespace trajdist {

double spd(std::span<const Point2D> from, std::span<const Point2D> to) {
  if (from.empty()) throw InvalidInput("spd: empty source trajectory");
  if (to.size() < 2) throw InvalidInput("spd: target needs at least 2 points");
  double sum = 0.0;
  for (const auto& p : from) sum += point_to_trajectory(p, to);
  return sum / static_cast<double>(from.size());
}

double spd(const Trajectory& from, const Trajectory& to) { return spd(from.points(), to.points()); }

double sspd(std::span<const Point2D> a, std::span<const Point2D> b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidInput("sspd: needs at least 2 points on each side");
  return 0.5 * (spd(a, b) + spd(b, a));
}

double sspd(const Trajectory& a, const Trajectory& b) { return sspd(a.points(), b.points()); }

}  // namespace trajdist
