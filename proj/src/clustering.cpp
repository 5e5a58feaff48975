#include "trajdist/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace trajdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relabels so that labels appear in order of first occurrence.
ClusterAssignment canonical(const std::vector<std::size_t>& raw) {
  ClusterAssignment out;
  out.labels.resize(raw.size());
  std::vector<std::size_t> remap;
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), raw[i]);
    if (it == seen.end()) {
      seen.push_back(raw[i]);
      out.labels[i] = seen.size() - 1;
    } else {
      out.labels[i] = static_cast<std::size_t>(it - seen.begin());
    }
  }
  out.k = seen.size();
  return out;
}

class WorkingMatrix {
 public:
  explicit WorkingMatrix(std::size_t n) : n_(n), v_(n * n, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> v_;
};

}  // namespace

std::string_view linkage_name(Linkage linkage) {
  switch (linkage) {
    case Linkage::single:
      return "single";
    case Linkage::average:
      return "average";
    case Linkage::weighted:
      return "weighted";
    case Linkage::ward:
      return "ward";
  }
  return "unknown";
}

Linkage parse_linkage(std::string_view name) {
  for (Linkage l : {Linkage::single, Linkage::average, Linkage::weighted, Linkage::ward}) {
    if (linkage_name(l) == name) return l;
  }
  throw InvalidInput("unknown linkage '" + std::string(name) + "'");
}

Dendrogram hca(const DistanceMatrix& m, Linkage linkage) {
  const std::size_t n = m.size();
  if (n < 2) throw InvalidInput("hca needs at least 2 items");

  const bool squared = linkage == Linkage::ward;
  WorkingMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d(i, j) = squared ? m(i, j) * m(i, j) : m(i, j);
  }

  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> cluster_id(n);
  std::iota(cluster_id.begin(), cluster_id.end(), 0);
  // Nearest active neighbour with a higher slot index, per slot.
  std::vector<std::size_t> nn(n, n);
  std::vector<double> nn_dist(n, kInf);

  auto refresh = [&](std::size_t i) {
    nn[i] = n;
    nn_dist[i] = kInf;
    for (std::size_t k = i + 1; k < n; ++k) {
      if (active[k] && d(i, k) < nn_dist[i]) {
        nn_dist[i] = d(i, k);
        nn[i] = k;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  Dendrogram out;
  out.items = n;
  out.linkage = linkage;
  out.merges.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && nn[i] < n && (a == n || nn_dist[i] < nn_dist[a])) a = i;
    }
    const std::size_t b = nn[a];
    const double dab = d(a, b);
    const double height = squared ? std::sqrt(std::max(0.0, dab)) : dab;

    const std::size_t na = size[a], nb = size[b];
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double dka = d(k, a), dkb = d(k, b);
      double updated = 0.0;
      switch (linkage) {
        case Linkage::single:
          updated = std::min(dka, dkb);
          break;
        case Linkage::average:
          updated = (static_cast<double>(na) * dka + static_cast<double>(nb) * dkb) /
                    static_cast<double>(na + nb);
          break;
        case Linkage::weighted:
          updated = 0.5 * (dka + dkb);
          break;
        case Linkage::ward: {
          const double nk = static_cast<double>(size[k]);
          const double total = static_cast<double>(na + nb) + nk;
          updated = ((static_cast<double>(na) + nk) * dka + (static_cast<double>(nb) + nk) * dkb - nk * dab) / total;
          updated = std::max(0.0, updated);
          break;
        }
      }
      d(k, a) = updated;
      d(a, k) = updated;
    }

    Merge merge;
    merge.left = std::min(cluster_id[a], cluster_id[b]);
    merge.right = std::max(cluster_id[a], cluster_id[b]);
    merge.height = height;
    merge.size = na + nb;
    if (!out.merges.empty()) {
      const double prev = out.merges.back().height;
      if (height < prev - 1e-12 * std::max(1.0, prev)) out.inversions.push_back(step);
    }
    out.merges.push_back(merge);

    active[b] = false;
    size[a] = na + nb;
    cluster_id[a] = n + step;

    refresh(a);
    for (std::size_t k = 0; k < a; ++k) {
      if (!active[k]) continue;
      if (nn[k] == a || nn[k] == b) {
        refresh(k);
      } else if (d(k, a) < nn_dist[k] || (d(k, a) == nn_dist[k] && a < nn[k])) {
        nn[k] = a;
        nn_dist[k] = d(k, a);
      }
    }
    for (std::size_t k = a + 1; k < b; ++k) {
      if (active[k] && nn[k] == b) refresh(k);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> ClusterAssignment::members() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out.at(labels[i]).push_back(i);
  return out;
}

void ClusterAssignment::validate(std::size_t items) const {
  if (labels.size() != items) {
    throw InvalidInput("assignment has " + std::to_string(labels.size()) + " labels for " +
                       std::to_string(items) + " items");
  }
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t label : labels) {
    if (label >= k) throw InvalidInput("label " + std::to_string(label) + " out of range");
    ++counts[label];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) throw InvalidInput("cluster " + std::to_string(c) + " is empty");
  }
}

ClusterAssignment cut(const Dendrogram& d, std::size_t k) {
  const std::size_t n = d.items;
  if (k < 1 || k > n) {
    throw InvalidInput("cluster count " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  // Representative item of every cluster id created so far.
  std::vector<std::size_t> rep(n + d.merges.size());
  std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (std::size_t s = 0; s < n - k; ++s) {
    const Merge& mg = d.merges[s];
    const std::size_t ra = find(rep[mg.left]);
    const std::size_t rb = find(rep[mg.right]);
    parent[std::max(ra, rb)] = std::min(ra, rb);
    rep[n + s] = std::min(ra, rb);
  }
  std::vector<std::size_t> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = find(i);
  return canonical(raw);
}

std::size_t exemplar(std::span<const std::size_t> indices, const DistanceMatrix& m) {
  if (indices.empty()) throw InvalidInput("exemplar of an empty set");
  std::size_t best = indices[0];
  double best_sum = kInf;
  for (std::size_t i : indices) {
    double sum = 0.0;
    for (std::size_t j : indices) sum += m(i, j);
    if (sum < best_sum || (sum == best_sum && i < best)) {
      best_sum = sum;
      best = i;
    }
  }
  return best;
}

CriterionRow criteria(const ClusterAssignment& assignment, const DistanceMatrix& m) {
  assignment.validate(m.size());
  std::vector<std::size_t> everyone(m.size());
  std::iota(everyone.begin(), everyone.end(), 0);
  const std::size_t global = exemplar(everyone, m);

  CriterionRow row;
  row.k = assignment.k;
  for (const auto& cluster : assignment.members()) {
    const std::size_t ex = exemplar(cluster, m);
    row.exemplars.push_back(ex);
    row.between += m(global, ex);
    double sum = 0.0;
    for (std::size_t i : cluster) sum += m(ex, i);
    row.within += sum / static_cast<double>(cluster.size());
  }
  return row;
}

std::vector<CriterionRow> criteria_curve(const Dendrogram& d, const DistanceMatrix& m, std::size_t k_min,
                                         std::size_t k_max) {
  if (d.items != m.size()) throw InvalidInput("dendrogram and matrix sizes differ");
  k_min = std::max<std::size_t>(k_min, 1);
  k_max = std::min(k_max, d.items);
  std::vector<CriterionRow> rows;
  for (std::size_t k = k_min; k <= k_max; ++k) rows.push_back(criteria(cut(d, k), m));
  return rows;
}

double APPreference::resolve(const DistanceMatrix& m) const {
  switch (mode) {
    case Mode::min_similarity:
      return -m.max_off_diagonal();
    case Mode::min_distance:
      return m.min_off_diagonal();
    case Mode::value:
      if (!std::isfinite(value)) throw InvalidInput("AP preference must be finite");
      return value;
  }
  throw InvalidInput("unknown AP preference mode");
}

APResult affinity_propagation(const DistanceMatrix& m, const APOptions& options) {
  const std::size_t n = m.size();
  if (n < 1) throw InvalidInput("affinity propagation needs at least 1 item");
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw InvalidInput("AP damping must lie strictly inside (0, 1)");
  }
  if (options.max_iter == 0 || options.convergence_iter == 0) {
    throw InvalidInput("AP max_iter and convergence_iter must be positive");
  }

  const double pref = options.preference.resolve(m);
  const double lambda = options.damping;

  APResult result;
  // All off-diagonal similarities equal: nothing to propagate. Everyone is an
  // exemplar when the preference beats the common similarity, else one cluster.
  bool flat = n > 1;
  for (std::size_t i = 0; i < n && flat; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i != k && m(i, k) != m(0, 1)) {
        flat = false;
        break;
      }
    }
  }
  if (flat) {
    const bool each_own = pref > -m(0, 1);
    result.assignment.k = each_own ? n : 1;
    result.assignment.labels.resize(n, 0);
    if (each_own) std::iota(result.assignment.labels.begin(), result.assignment.labels.end(), std::size_t{0});
    result.exemplars.resize(result.assignment.k);
    std::iota(result.exemplars.begin(), result.exemplars.end(), std::size_t{0});
    result.converged = true;
    result.state = APState{std::vector<double>(n * n, 0.0), std::vector<double>(n * n, 0.0), lambda, pref};
    return result;
  }

  std::vector<double> s(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) s[i * n + k] = i == k ? pref : -m(i, k);
  }
  if (options.tie_noise) {
    // Relative perturbation at machine precision, enough to break the exact
    // symmetries that make the damped sweeps oscillate.
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    const double tiny = std::numeric_limits<double>::min() * 100.0;
    for (double& v : s) v += (std::numeric_limits<double>::epsilon() * v + tiny) * gauss(rng);
  }
  std::vector<double> r(n * n, 0.0), a(n * n, 0.0), col(n);
  std::vector<bool> is_ex(n, false), prev_ex(n, false);

  std::size_t stable = 0;
  std::size_t it = 0;
  for (; it < options.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double first = -kInf, second = -kInf;
      std::size_t arg = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = a[i * n + k] + s[i * n + k];
        if (v > first) {
          second = first;
          first = v;
          arg = k;
        } else if (v > second) {
          second = v;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double fresh = s[i * n + k] - (k == arg ? second : first);
        r[i * n + k] = lambda * r[i * n + k] + (1.0 - lambda) * (n == 1 ? 0.0 : fresh);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += i == k ? r[k * n + k] : std::max(0.0, r[i * n + k]);
      col[k] = sum;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double own = i == k ? r[k * n + k] : std::max(0.0, r[i * n + k]);
        double fresh = col[k] - own;
        if (i != k) fresh = std::min(0.0, fresh);
        a[i * n + k] = lambda * a[i * n + k] + (1.0 - lambda) * fresh;
      }
    }

    for (std::size_t k = 0; k < n; ++k) is_ex[k] = a[k * n + k] + r[k * n + k] > 0.0;
    stable = (it > 0 && is_ex == prev_ex) ? stable + 1 : 1;
    prev_ex = is_ex;
    const bool any = std::find(is_ex.begin(), is_ex.end(), true) != is_ex.end();
    if (any && stable >= options.convergence_iter) {
      result.converged = true;
      ++it;
      break;
    }
  }
  result.iterations = it;

  std::vector<std::size_t> exemplars;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_ex[k]) exemplars.push_back(k);
  }
  if (exemplars.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (a[k * n + k] + r[k * n + k] > a[best * n + best] + r[best * n + best]) best = k;
    }
    exemplars.push_back(best);
    result.fallback_single_exemplar = true;
  }

  std::vector<std::size_t> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_ex[i] && !result.fallback_single_exemplar) {
      raw[i] = i;
      continue;
    }
    std::size_t best = exemplars[0];
    for (std::size_t k : exemplars) {
      if (s[i * n + k] + a[i * n + k] > s[i * n + best] + a[i * n + best]) best = k;
    }
    raw[i] = best;
  }
  for (std::size_t k : exemplars) raw[k] = k;

  result.assignment = canonical(raw);
  result.exemplars.resize(result.assignment.k);
  for (std::size_t k : exemplars) result.exemplars[result.assignment.labels[k]] = k;
  result.state = APState{std::move(r), std::move(a), lambda, pref};
  return result;
}

}  // namespace trajdist
