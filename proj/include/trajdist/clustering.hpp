#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trajdist/matrix.hpp"

namespace trajdist {

enum class Linkage { single, average, weighted, ward };

std::string_view linkage_name(Linkage linkage);
Linkage parse_linkage(std::string_view name);

/// One agglomeration step. Cluster ids follow the usual convention: items are
/// 0..n-1 and the cluster created by step s gets id n + s.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t items = 0;
  Linkage linkage = Linkage::average;
  std::vector<Merge> merges;
  /// Steps whose height is below the previous step's height. Can only be
  /// non-empty for ward on dissimilarities that are not Euclidean.
  std::vector<std::size_t> inversions;
};

/// Agglomerative clustering with Lance-Williams updates. At every step the
/// pair of active clusters with the smallest current dissimilarity merges;
/// ties go to the lexicographically lowest (slot, slot) pair, where a merged
/// cluster keeps the lower slot. Ward runs on squared dissimilarities and
/// reports square-root heights.
Dendrogram hca(const DistanceMatrix& m, Linkage linkage);

struct ClusterAssignment {
  /// labels[item] in [0, k); label 0 is the cluster of item 0 and labels are
  /// numbered by first appearance.
  std::vector<std::size_t> labels;
  std::size_t k = 0;

  std::vector<std::vector<std::size_t>> members() const;
  void validate(std::size_t items) const;
};

/// Undoes the last k-1 merges. Throws InvalidInput unless 1 <= k <= items.
ClusterAssignment cut(const Dendrogram& d, std::size_t k);

/// Member of `indices` minimizing the summed distance to the other members;
/// ties go to the lowest item index.
std::size_t exemplar(std::span<const std::size_t> indices, const DistanceMatrix& m);

struct CriterionRow {
  std::size_t k = 0;
  double between = 0.0;  ///< BC: sum of distances from the global exemplar to each cluster exemplar.
  double within = 0.0;   ///< WC: sum over clusters of the mean distance to the cluster exemplar.
  std::vector<std::size_t> exemplars;  ///< Item index of each cluster's exemplar, by label.
};

CriterionRow criteria(const ClusterAssignment& assignment, const DistanceMatrix& m);

/// Criteria of the HCA cut at every k in [k_min, k_max] (clamped to [1, n]).
std::vector<CriterionRow> criteria_curve(const Dendrogram& d, const DistanceMatrix& m, std::size_t k_min,
                                         std::size_t k_max);

struct APPreference {
  enum class Mode {
    /// Lowest similarity, i.e. minus the largest pairwise distance.
    min_similarity,
    /// The smallest pairwise distance taken as the preference value as is.
    min_distance,
    value,
  };
  Mode mode = Mode::min_similarity;
  double value = 0.0;

  double resolve(const DistanceMatrix& m) const;
};

struct APOptions {
  APPreference preference{};
  double damping = 0.5;
  std::size_t max_iter = 1000;
  std::size_t convergence_iter = 15;
  /// Perturb similarities by a few ulps (seeded) before the sweeps.
  bool tie_noise = true;
  std::uint64_t seed = 0;
};

/// Message state after the last sweep, row-major n x n.
struct APState {
  std::vector<double> responsibility;
  std::vector<double> availability;
  double damping = 0.5;
  double preference = 0.0;
};

struct APResult {
  ClusterAssignment assignment;
  /// Exemplar item index of each cluster, by label.
  std::vector<std::size_t> exemplars;
  APState state;
  std::size_t iterations = 0;
  /// False when max_iter was reached before the exemplar set stabilized; the
  /// assignment is then derived from the last sweep.
  bool converged = false;
  /// True when the sweeps produced no exemplar at all and a single exemplar
  /// (largest self-evidence, lowest index on ties) was used instead.
  bool fallback_single_exemplar = false;
};

/// Affinity propagation on similarities s(i,k) = -m(i,k) with the diagonal set
/// to the preference. Synchronous, damped sweeps; stops once a non-empty
/// exemplar set is unchanged for convergence_iter sweeps. Exemplars label themselves; every
/// other item joins the exemplar maximizing s(i,k) + a(i,k).
APResult affinity_propagation(const DistanceMatrix& m, const APOptions& options = {});

}  // namespace trajdist
