#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trajdist/geometry.hpp"
#include "trajdist/shape.hpp"
#include "trajdist/warping.hpp"

namespace trajdist {

enum class DistanceKind { dtw, lcss, edr, erp, hausdorff, frechet, discrete_frechet, sowd, sspd };

/// Every supported kind, in a fixed order.
const std::vector<DistanceKind>& all_distance_kinds();

std::string_view distance_name(DistanceKind kind);

/// Accepts the canonical names ("dtw", "lcss", ..., "discrete_frechet",
/// "sowd", "sspd") plus "owd" and "dlcss" as aliases. Throws InvalidInput.
DistanceKind parse_distance_kind(std::string_view name);

/// A distance together with the parameters it needs. LCSS enters matrices as
/// its dissimilarity form 1 - S, OWD as the symmetrized SOWD.
struct DistanceSpec {
  DistanceKind kind = DistanceKind::sspd;
  std::optional<double> eps_d;
  Point2D gap_point{};
  OwdParams owd{};

  /// Throws InvalidInput when a required parameter is missing or invalid.
  void validate() const;

  /// Canonical textual form, e.g. "lcss(eps_d=25)"; stored in matrix files.
  std::string describe() const;

  /// Evaluates the dissimilarity between two trajectories.
  double operator()(const Trajectory& a, const Trajectory& b) const;
};

}  // namespace trajdist
