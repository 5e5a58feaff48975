#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trajdist/geometry.hpp"

namespace trajdist {

/// Closed sub-interval of [0, 1]; empty when lo > hi.
struct FreeInterval {
  double lo = 1.0;
  double hi = 0.0;

  bool empty() const { return lo > hi; }
  static FreeInterval none() { return {}; }
};

/// Free space of one cell (i, j) of the diagram spanned by segment i of the
/// first curve and segment j of the second. `left` lives on the boundary where
/// the first curve sits at vertex i (parametrized along segment j of the second
/// curve); `bottom` is where the second curve sits at vertex j.
struct FreeSpaceCell {
  std::size_t i = 0;
  std::size_t j = 0;
  FreeInterval left;
  FreeInterval bottom;
};

/// Sorted ascending list of candidate leash lengths.
struct CandidateSet {
  std::vector<double> values;
};

/// Parameters t in [0,1] with |seg(t) - p| <= radius.
FreeInterval free_interval(Point2D p, const Segment& seg, double radius);

FreeSpaceCell free_space_cell(std::span<const Point2D> a, std::span<const Point2D> b,
                              std::size_t i, std::size_t j, double eps);

/// Fréchet distance between two segments, equal to their Hausdorff distance:
/// the largest endpoint-to-other-segment distance.
double segment_frechet(const Segment& s1, const Segment& s2);

/// Fréchet distances of all segment pairs, sorted.
CandidateSet segment_pair_candidates(std::span<const Point2D> a, std::span<const Point2D> b);

/// Every leash length at which the free-space reachability can change: the two
/// endpoint distances, vertex-to-segment distances in both directions (a
/// superset of segment_pair_candidates), and the distances at which a
/// passage between two vertices of one curve opens along a segment of the
/// other. Sorted and de-duplicated.
CandidateSet critical_values(std::span<const Point2D> a, std::span<const Point2D> b);

double hausdorff(std::span<const Point2D> a, std::span<const Point2D> b);
double hausdorff(const Trajectory& a, const Trajectory& b);

/// True iff a path monotone in both curves stays within eps. Interval
/// endpoints are computed with a relative slack of 1e-10 so that values
/// exactly at a critical leash length are accepted.
bool frechet_feasible(std::span<const Point2D> a, std::span<const Point2D> b, double eps);
bool frechet_feasible(const Trajectory& a, const Trajectory& b, double eps);

/// Continuous Fréchet distance: binary search for the smallest feasible
/// value of critical_values(a, b).
double frechet(std::span<const Point2D> a, std::span<const Point2D> b);
double frechet(const Trajectory& a, const Trajectory& b);

/// Smallest feasible value restricted to segment_pair_candidates plus the two
/// endpoint distances. This is an upper bound on frechet(); it can overshoot
/// when the optimum is set by a vertex-to-segment distance that is not a
/// segment-pair maximum.
double frechet_segment_pairs_only(std::span<const Point2D> a, std::span<const Point2D> b);

double discrete_frechet(std::span<const Point2D> a, std::span<const Point2D> b);
double discrete_frechet(const Trajectory& a, const Trajectory& b);

struct OwdParams {
  /// Arc-length sampling density, samples per meter.
  double samples_per_unit = 1.0;
  std::size_t min_samples_per_segment = 8;
};

/// One-way distance: length-normalized integral of the distance from the
/// first polyline to the second, by trapezoidal arc-length quadrature.
double owd(std::span<const Point2D> a, std::span<const Point2D> b, const OwdParams& params = {});
double owd(const Trajectory& a, const Trajectory& b, const OwdParams& params = {});

/// Mean of the two directional one-way distances.
double sowd(std::span<const Point2D> a, std::span<const Point2D> b, const OwdParams& params = {});
double sowd(const Trajectory& a, const Trajectory& b, const OwdParams& params = {});

}  // namespace trajdist
