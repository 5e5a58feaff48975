#include "trajdist/warping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajdist {

namespace {

void require_nonempty(std::span<const Point2D> a, std::span<const Point2D> b, const char* what) {
  if (a.empty() || b.empty()) throw InvalidInput(std::string(what) + ": empty input");
}

double min3(double a, double b, double c) { return std::min(a, std::min(b, c)); }

}  // namespace

void WarpingParams::validate() const {
  if (!std::isfinite(eps_d) || eps_d < 0.0) {
    throw InvalidInput("eps_d must be finite and >= 0, got " + std::to_string(eps_d));
  }
  if (!is_finite(gap_point)) throw InvalidInput("ERP gap point must be finite");
}

double dtw(std::span<const Point2D> a, std::span<const Point2D> b) {
  require_nonempty(a, b, "dtw");
  const std::size_t m = b.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m, inf), cur(m, inf);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double cost = euclidean(a[i], b[j]);
      if (i == 0 && j == 0) {
        cur[j] = cost;
      } else {
        const double diag = (i > 0 && j > 0) ? prev[j - 1] : inf;
        const double up = i > 0 ? prev[j] : inf;
        const double left = j > 0 ? cur[j - 1] : inf;
        cur[j] = cost + min3(diag, up, left);
      }
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

double dtw(const Trajectory& a, const Trajectory& b) { return dtw(a.points(), b.points()); }

CostGrid dtw_grid(std::span<const Point2D> a, std::span<const Point2D> b) {
  require_nonempty(a, b, "dtw");
  CostGrid grid{a.size(), b.size(), std::vector<double>(a.size() * b.size())};
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto cell = [&](std::size_t i, std::size_t j) -> double& { return grid.cells[i * grid.cols + j]; };
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double cost = euclidean(a[i], b[j]);
      if (i == 0 && j == 0) {
        cell(i, j) = cost;
        continue;
      }
      const double diag = (i > 0 && j > 0) ? cell(i - 1, j - 1) : inf;
      const double up = i > 0 ? cell(i - 1, j) : inf;
      const double left = j > 0 ? cell(i, j - 1) : inf;
      cell(i, j) = cost + min3(diag, up, left);
    }
  }
  return grid;
}

std::vector<std::pair<std::size_t, std::size_t>> warping_path(const CostGrid& grid) {
  std::vector<std::pair<std::size_t, std::size_t>> path;
  if (grid.rows == 0 || grid.cols == 0) return path;
  std::size_t i = grid.rows - 1, j = grid.cols - 1;
  path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = grid.at(i - 1, j - 1);
      const double up = grid.at(i - 1, j);
      const double left = grid.at(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    path.emplace_back(i, j);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t lcss(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params) {
  params.validate();
  if (a.empty() || b.empty()) return 0;
  const std::size_t m = b.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (euclidean(a[i - 1], b[j - 1]) < params.eps_d) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

std::size_t lcss(const Trajectory& a, const Trajectory& b, const WarpingParams& params) {
  return lcss(a.points(), b.points(), params);
}

double dlcss(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params) {
  require_nonempty(a, b, "dlcss");
  const double shorter = static_cast<double>(std::min(a.size(), b.size()));
  return 1.0 - static_cast<double>(lcss(a, b, params)) / shorter;
}

double dlcss(const Trajectory& a, const Trajectory& b, const WarpingParams& params) {
  return dlcss(a.points(), b.points(), params);
}

std::size_t edr(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params) {
  params.validate();
  const std::size_t m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      if (euclidean(a[i - 1], b[j - 1]) < params.eps_d) {
        cur[j] = prev[j - 1];
      } else {
        cur[j] = 1 + std::min(prev[j - 1], std::min(prev[j], cur[j - 1]));
      }
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

std::size_t edr(const Trajectory& a, const Trajectory& b, const WarpingParams& params) {
  return edr(a.points(), b.points(), params);
}

double erp(std::span<const Point2D> a, std::span<const Point2D> b, const WarpingParams& params) {
  params.validate();
  const Point2D g = params.gap_point;
  const std::size_t m = b.size();
  std::vector<double> prev(m + 1), cur(m + 1);
  prev[0] = 0.0;
  for (std::size_t j = 1; j <= m; ++j) prev[j] = prev[j - 1] + euclidean(b[j - 1], g);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    const double gap_a = euclidean(a[i - 1], g);
    cur[0] = prev[0] + gap_a;
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = min3(prev[j - 1] + euclidean(a[i - 1], b[j - 1]),
                    prev[j] + gap_a,
                    cur[j - 1] + euclidean(b[j - 1], g));
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double erp(const Trajectory& a, const Trajectory& b, const WarpingParams& params) {
  return erp(a.points(), b.points(), params);
}

}  // namespace trajdist
