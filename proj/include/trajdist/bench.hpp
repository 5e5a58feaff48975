#pragma once

#include <span>
#include <string>
#include <vector>

#include "trajdist/distance.hpp"
#include "trajdist/geometry.hpp"

namespace trajdist {

struct BenchRow {
  std::string distance;
  double serial_seconds = 0.0;
  double parallel_seconds = 0.0;
};

struct BenchReport {
  std::size_t trajectories = 0;
  unsigned parallel_workers = 1;
  std::string environment;
  std::vector<BenchRow> rows;
};

/// The six distances compared in the timing table, LCSS with `eps_d`.
std::vector<DistanceSpec> table_distances(double eps_d);

/// Wall time of one full compute_matrix per distance, best of `repeats`
/// runs, serially and with `workers` threads.
BenchReport run_bench(std::span<const Trajectory> trajectories, std::span<const DistanceSpec> specs,
                      unsigned workers, unsigned repeats = 3);

/// Best-of-`repeats` serial matrix time, repeating the matrix inside a run
/// until at least `min_seconds` elapse so small inputs are timed reliably.
double time_matrix(std::span<const Trajectory> trajectories, const DistanceSpec& spec, unsigned workers,
                   unsigned repeats = 3, double min_seconds = 0.05);

/// Least-squares slope of log(time) against log(n).
double scaling_exponent(std::span<const double> sizes, std::span<const double> seconds);

}  // namespace trajdist
