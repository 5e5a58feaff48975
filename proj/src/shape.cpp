#include "trajdist/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajdist {

namespace {

constexpr double kRelativeSlack = 1e-10;
constexpr double kAbsoluteSlack = 1e-12;

void require_polyline(std::span<const Point2D> p, const char* what) {
  if (p.size() < 2) throw InvalidInput(std::string(what) + ": needs at least 2 points");
}

double slackened(double eps) { return eps + kRelativeSlack * eps + kAbsoluteSlack; }

FreeInterval clip_from(FreeInterval iv, double lo) {
  iv.lo = std::max(iv.lo, lo);
  return iv;
}

// Vertex of one curve against the other curve's segments: the smallest leash
// for that vertex.
double directed_vertex_max(std::span<const Point2D> from, std::span<const Point2D> to) {
  double worst = 0.0;
  for (const auto& p : from) worst = std::max(worst, point_to_trajectory(p, to));
  return worst;
}

void add_passage_values(std::span<const Point2D> vertices, std::span<const Point2D> other,
                        std::vector<double>& out) {
  for (std::size_t s = 0; s + 1 < other.size(); ++s) {
    const Point2D origin = other[s];
    const Point2D dir = other[s + 1] - origin;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      for (std::size_t l = k + 1; l < vertices.size(); ++l) {
        const Point2D w = vertices[l] - vertices[k];
        const double denom = dot(dir, w);
        if (denom == 0.0) continue;
        const Point2D mid = 0.5 * (vertices[k] + vertices[l]);
        const double t = dot(mid - origin, w) / denom;
        if (t < 0.0 || t > 1.0) continue;
        out.push_back(euclidean(origin + t * dir, vertices[k]));
      }
    }
  }
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Smallest value of `sorted` accepted by frechet_feasible. The last value is
// always feasible for a complete candidate set; for partial sets the largest
// value is returned when nothing is feasible.
double smallest_feasible(std::span<const Point2D> a, std::span<const Point2D> b,
                         const std::vector<double>& sorted) {
  std::size_t lo = 0, hi = sorted.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (frechet_feasible(a, b, sorted[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return sorted[lo];
}

}  // namespace

FreeInterval free_interval(Point2D p, const Segment& seg, double radius) {
  const Point2D d = seg.b - seg.a;
  const Point2D f = seg.a - p;
  const double a = dot(d, d);
  const double c = dot(f, f) - radius * radius;
  if (a == 0.0) return c <= 0.0 ? FreeInterval{0.0, 1.0} : FreeInterval::none();
  const double b = 2.0 * dot(d, f);
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return FreeInterval::none();
  const double root = std::sqrt(disc);
  const double t0 = (-b - root) / (2.0 * a);
  const double t1 = (-b + root) / (2.0 * a);
  const FreeInterval iv{std::max(0.0, t0), std::min(1.0, t1)};
  return iv.empty() ? FreeInterval::none() : iv;
}

FreeSpaceCell free_space_cell(std::span<const Point2D> a, std::span<const Point2D> b,
                              std::size_t i, std::size_t j, double eps) {
  if (i + 1 >= a.size() || j + 1 >= b.size()) throw InvalidInput("free_space_cell: index out of range");
  FreeSpaceCell cell{i, j, {}, {}};
  cell.left = free_interval(a[i], {b[j], b[j + 1]}, eps);
  cell.bottom = free_interval(b[j], {a[i], a[i + 1]}, eps);
  return cell;
}

double segment_frechet(const Segment& s1, const Segment& s2) {
  return std::max({point_to_segment(s1.a, s2), point_to_segment(s1.b, s2),
                   point_to_segment(s2.a, s1), point_to_segment(s2.b, s1)});
}

CandidateSet segment_pair_candidates(std::span<const Point2D> a, std::span<const Point2D> b) {
  require_polyline(a, "segment_pair_candidates");
  require_polyline(b, "segment_pair_candidates");
  CandidateSet set;
  set.values.reserve((a.size() - 1) * (b.size() - 1));
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      set.values.push_back(segment_frechet({a[i], a[i + 1]}, {b[j], b[j + 1]}));
    }
  }
  sort_unique(set.values);
  return set;
}

CandidateSet critical_values(std::span<const Point2D> a, std::span<const Point2D> b) {
  require_polyline(a, "critical_values");
  require_polyline(b, "critical_values");
  CandidateSet set;
  auto& v = set.values;
  v.push_back(euclidean(a.front(), b.front()));
  v.push_back(euclidean(a.back(), b.back()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j + 1 < b.size(); ++j) v.push_back(point_to_segment(a[i], {b[j], b[j + 1]}));
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i) v.push_back(point_to_segment(b[j], {a[i], a[i + 1]}));
  }
  add_passage_values(a, b, v);
  add_passage_values(b, a, v);
  sort_unique(v);
  return set;
}

double hausdorff(std::span<const Point2D> a, std::span<const Point2D> b) {
  require_polyline(a, "hausdorff");
  require_polyline(b, "hausdorff");
  return std::max(directed_vertex_max(a, b), directed_vertex_max(b, a));
}

double hausdorff(const Trajectory& a, const Trajectory& b) { return hausdorff(a.points(), b.points()); }

bool frechet_feasible(std::span<const Point2D> a, std::span<const Point2D> b, double eps) {
  require_polyline(a, "frechet_feasible");
  require_polyline(b, "frechet_feasible");
  if (!(eps >= 0.0)) return false;
  const double r = slackened(eps);
  if (euclidean(a.front(), b.front()) > r || euclidean(a.back(), b.back()) > r) return false;

  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // left[i * (m - 1) + j]: reachable part of the boundary where the first
  // curve is at vertex i and the second runs along segment j (i < n, j < m-1).
  // bottom[i * m + j]: reachable part where the second curve is at vertex j
  // and the first runs along segment i (i < n-1, j < m).
  std::vector<FreeInterval> left(n * (m - 1)), bottom((n - 1) * m);
  auto L = [&](std::size_t i, std::size_t j) -> FreeInterval& { return left[i * (m - 1) + j]; };
  auto B = [&](std::size_t i, std::size_t j) -> FreeInterval& { return bottom[i * m + j]; };
  auto free_left = [&](std::size_t i, std::size_t j) { return free_interval(a[i], {b[j], b[j + 1]}, r); };
  auto free_bottom = [&](std::size_t i, std::size_t j) { return free_interval(b[j], {a[i], a[i + 1]}, r); };

  for (std::size_t j = 0; j + 1 < m; ++j) {
    const FreeInterval f = free_left(0, j);
    const bool entered = j == 0 || (!L(0, j - 1).empty() && L(0, j - 1).hi >= 1.0);
    L(0, j) = (entered && !f.empty() && f.lo <= 0.0) ? f : FreeInterval::none();
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const FreeInterval f = free_bottom(i, 0);
    const bool entered = i == 0 || (!B(i - 1, 0).empty() && B(i - 1, 0).hi >= 1.0);
    B(i, 0) = (entered && !f.empty() && f.lo <= 0.0) ? f : FreeInterval::none();
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const FreeInterval& from_left = L(i, j);
      const FreeInterval& from_bottom = B(i, j);
      const FreeInterval right_free = free_left(i + 1, j);
      const FreeInterval top_free = free_bottom(i, j + 1);

      FreeInterval right = FreeInterval::none();
      if (!from_bottom.empty()) {
        right = right_free;
      } else if (!from_left.empty()) {
        right = clip_from(right_free, from_left.lo);
      }
      FreeInterval top = FreeInterval::none();
      if (!from_left.empty()) {
        top = top_free;
      } else if (!from_bottom.empty()) {
        top = clip_from(top_free, from_bottom.lo);
      }
      L(i + 1, j) = right.empty() ? FreeInterval::none() : right;
      B(i, j + 1) = top.empty() ? FreeInterval::none() : top;
    }
  }

  const FreeInterval& end_left = L(n - 1, m - 2);
  const FreeInterval& end_bottom = B(n - 2, m - 1);
  return (!end_left.empty() && end_left.hi >= 1.0) || (!end_bottom.empty() && end_bottom.hi >= 1.0);
}

bool frechet_feasible(const Trajectory& a, const Trajectory& b, double eps) {
  return frechet_feasible(a.points(), b.points(), eps);
}

double frechet(std::span<const Point2D> a, std::span<const Point2D> b) {
  const CandidateSet set = critical_values(a, b);
  return smallest_feasible(a, b, set.values);
}

double frechet(const Trajectory& a, const Trajectory& b) { return frechet(a.points(), b.points()); }

double frechet_segment_pairs_only(std::span<const Point2D> a, std::span<const Point2D> b) {
  CandidateSet set = segment_pair_candidates(a, b);
  set.values.push_back(euclidean(a.front(), b.front()));
  set.values.push_back(euclidean(a.back(), b.back()));
  sort_unique(set.values);
  return smallest_feasible(a, b, set.values);
}

double discrete_frechet(std::span<const Point2D> a, std::span<const Point2D> b) {
  if (a.empty() || b.empty()) throw InvalidInput("discrete_frechet: empty input");
  const std::size_t m = b.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m, inf), cur(m, inf);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double cost = euclidean(a[i], b[j]);
      if (i == 0 && j == 0) {
        cur[j] = cost;
        continue;
      }
      const double diag = (i > 0 && j > 0) ? prev[j - 1] : inf;
      const double up = i > 0 ? prev[j] : inf;
      const double left = j > 0 ? cur[j - 1] : inf;
      cur[j] = std::max(cost, std::min(diag, std::min(up, left)));
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

double discrete_frechet(const Trajectory& a, const Trajectory& b) {
  return discrete_frechet(a.points(), b.points());
}

double owd(std::span<const Point2D> a, std::span<const Point2D> b, const OwdParams& params) {
  require_polyline(a, "owd");
  require_polyline(b, "owd");
  if (!(params.samples_per_unit > 0.0) || !std::isfinite(params.samples_per_unit)) {
    throw InvalidInput("owd: samples_per_unit must be positive");
  }
  const double total = PiecewiseLinearView::of(a).total_length;
  if (total <= 0.0) throw InvalidInput("owd: first trajectory has zero length");
  if (PiecewiseLinearView::of(b).total_length <= 0.0) throw InvalidInput("owd: second trajectory has zero length");

  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const Segment seg{a[i], a[i + 1]};
    const double len = seg.length();
    if (len == 0.0) continue;
    const auto by_density = static_cast<std::size_t>(std::ceil(len * params.samples_per_unit));
    const std::size_t steps = std::max({by_density, params.min_samples_per_segment, std::size_t{1}});
    const double h = len / static_cast<double>(steps);
    double sum = 0.5 * (point_to_trajectory(seg.a, b) + point_to_trajectory(seg.b, b));
    for (std::size_t k = 1; k < steps; ++k) {
      sum += point_to_trajectory(seg.at(static_cast<double>(k) / static_cast<double>(steps)), b);
    }
    integral += sum * h;
  }
  return integral / total;
}

double owd(const Trajectory& a, const Trajectory& b, const OwdParams& params) {
  return owd(a.points(), b.points(), params);
}

double sowd(std::span<const Point2D> a, std::span<const Point2D> b, const OwdParams& params) {
  return 0.5 * (owd(a, b, params) + owd(b, a, params));
}

double sowd(const Trajectory& a, const Trajectory& b, const OwdParams& params) {
  return sowd(a.points(), b.points(), params);
}

}  // namespace trajdist
