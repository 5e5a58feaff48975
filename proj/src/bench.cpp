#include "trajdist/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "trajdist/matrix.hpp"

namespace trajdist {

std::vector<DistanceSpec> table_distances(double eps_d) {
  std::vector<DistanceSpec> specs;
  for (DistanceKind k : {DistanceKind::frechet, DistanceKind::discrete_frechet, DistanceKind::hausdorff,
                         DistanceKind::dtw, DistanceKind::lcss, DistanceKind::sspd}) {
    DistanceSpec s;
    s.kind = k;
    if (k == DistanceKind::lcss) s.eps_d = eps_d;
    specs.push_back(s);
  }
  return specs;
}

double time_matrix(std::span<const Trajectory> trajectories, const DistanceSpec& spec, unsigned workers,
                   unsigned repeats, double min_seconds) {
  using clock = std::chrono::steady_clock;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned r = 0; r < std::max(1u, repeats); ++r) {
    std::size_t runs = 0;
    const auto start = clock::now();
    double elapsed = 0.0;
    do {
      const DistanceMatrix m = compute_matrix(trajectories, spec, workers);
      ++runs;
      elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_seconds);
    best = std::min(best, elapsed / static_cast<double>(runs));
  }
  return best;
}

BenchReport run_bench(std::span<const Trajectory> trajectories, std::span<const DistanceSpec> specs,
                      unsigned workers, unsigned repeats) {
  BenchReport report;
  report.trajectories = trajectories.size();
  report.parallel_workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  report.environment = "hardware_concurrency=" + std::to_string(std::thread::hardware_concurrency());
  for (const auto& spec : specs) {
    BenchRow row;
    row.distance = std::string(distance_name(spec.kind));
    row.serial_seconds = time_matrix(trajectories, spec, 1, repeats, 0.0);
    row.parallel_seconds = time_matrix(trajectories, spec, report.parallel_workers, repeats, 0.0);
    report.rows.push_back(row);
  }
  return report;
}

double scaling_exponent(std::span<const double> sizes, std::span<const double> seconds) {
  const std::size_t n = std::min(sizes.size(), seconds.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += std::log(sizes[k]);
    my += std::log(seconds[k]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = std::log(sizes[k]) - mx;
    sxy += dx * (std::log(seconds[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace trajdist
