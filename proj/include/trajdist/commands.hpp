#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trajdist/bench.hpp"
#include "trajdist/clustering.hpp"
#include "trajdist/dataset.hpp"
#include "trajdist/distance.hpp"
#include "trajdist/matrix.hpp"

// Batch operations behind the `trajdist` command line. Each writes its
// primary output to the given stream and diagnostics to `log`.
namespace trajdist::commands {

struct MatrixJob {
  std::filesystem::path input;
  IngestOptions ingest;
  std::string distance;
  std::optional<double> eps_d;
  Point2D gap_point{};
  OwdParams owd{};
  unsigned workers = 1;
  std::filesystem::path output;
  std::optional<std::filesystem::path> csv_output;
};

DistanceSpec make_distance_spec(const std::string& name, std::optional<double> eps_d, Point2D gap, OwdParams owd);

DistanceMatrix run_matrix(const MatrixJob& job, std::ostream& log);

enum class Method { hca, ap };
Method parse_method(const std::string& name);

struct ClusterJob {
  std::filesystem::path matrix;
  std::optional<std::filesystem::path> dataset;
  IngestOptions ingest;
  Method method = Method::hca;
  Linkage linkage = Linkage::ward;
  std::size_t k = 2;
  APOptions ap{};
};

/// CSV: traj_id,label,exemplar_id,is_exemplar
void run_cluster(const ClusterJob& job, std::ostream& out, std::ostream& log);

struct CriteriaJob {
  std::filesystem::path matrix;
  std::optional<std::filesystem::path> dataset;
  IngestOptions ingest;
  Method method = Method::hca;
  Linkage linkage = Linkage::ward;
  std::size_t k_min = 1;
  std::size_t k_max = 50;
  /// AP only: number of preference values swept between minus the largest
  /// and minus the smallest pairwise distance.
  std::size_t ap_steps = 25;
  APOptions ap{};
};

/// Rows of the criterion table, K ascending.
std::vector<CriterionRow> compute_criteria(const CriteriaJob& job, std::ostream& log);

/// CSV: k,bc,wc,exemplars (exemplar ids separated by ';'), 17 significant digits.
void write_criteria_csv(const std::vector<CriterionRow>& rows, const DistanceMatrix& m, std::ostream& out);
void run_criteria(const CriteriaJob& job, std::ostream& out, std::ostream& log);

struct SynthJob {
  std::optional<std::filesystem::path> spec_file;
  std::size_t per_bundle = 30;
  /// Overrides the seed of a spec file; the preset defaults to 0.
  std::optional<std::uint64_t> seed;
  std::filesystem::path output;
  std::optional<std::filesystem::path> labels_output;
};

SynthResult run_synth(const SynthJob& job, std::ostream& log);

struct BenchJob {
  std::optional<std::filesystem::path> input;
  IngestOptions ingest;
  std::size_t synth_count = 100;
  std::uint64_t seed = 0;
  double eps_d = 25.0;
  unsigned workers = 0;
  unsigned repeats = 3;
};

/// CSV: distance,serial_seconds,parallel_seconds
BenchReport run_bench(const BenchJob& job, std::ostream& out, std::ostream& log);

/// Dataset used by `bench` without an input file: `count` trajectories of
/// 8 to 12 points (about 10), spread over three route bundles.
std::vector<Trajectory> bench_trajectories(std::size_t count, std::uint64_t seed);

struct IngestJob {
  std::filesystem::path input;
  IngestOptions options;
  std::filesystem::path output;
};

TrajectoryDataset run_ingest(const IngestJob& job, std::ostream& log);

}  // namespace trajdist::commands
