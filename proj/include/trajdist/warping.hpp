#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "trajdist/geometry.hpp"

namespace trajdist {

// Warping distances computed by dynamic programming over the n1 x n2 index
// grid. The span overloads accept any point count (including 0 or 1) so the
// base cases of the recurrences are reachable; Trajectory overloads forward.

struct WarpingParams {
  /// Matching threshold for LCSS and EDR; two points match iff dist < eps_d.
  double eps_d = 0.0;
  /// Reference point paid by unmatched points in ERP.
  Point2D gap_point{};

  void validate() const;
};

/// Full accumulated-cost grid, row-major, rows = first input.
struct CostGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;

  double at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
};

double dtw(std::span<const Point2D> a, std::span<const Point2D> b);
double dtw(const Trajectory& a, const Trajectory& b);

/// DTW with the full grid retained; use warping_path() to backtrack.
CostGrid dtw_grid(std::span<const Point2D> a, std::span<const Point2D> b);

/// Optimal path from (0,0) to (rows-1, cols-1). Ties prefer the diagonal,
/// then the move that advances the first input.
std::vector<std::pair<std::size_t, std::size_t>> warping_path(const CostGrid& grid);

std::size_t lcss(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params);
std::size_t lcss(const Trajectory& a, const Trajectory& b, const WarpingParams& params);

/// 1 - lcss / min(n1, n2), in [0, 1].
double dlcss(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params);
double dlcss(const Trajectory& a, const Trajectory& b, const WarpingParams& params);

std::size_t edr(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params);
std::size_t edr(const Trajectory& a, const Trajectory& b, const WarpingParams& params);

double erp(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params);
double erp(const Trajectory& a, const Trajectory& b, const WarpingParams& params);

}  // namespace trajdist
