// trajdist: trajectory distance matrices, clustering and criterion curves.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trajdist/commands.hpp"

namespace {

using namespace trajdist;

struct IngestFlags {
  std::string format = "csv";
  bool wgs84 = false;
  std::vector<double> origin;
  std::size_t min_points = 2;
  std::vector<double> start_box;
  std::vector<double> end_box;

  void attach(CLI::App* app) {
    app->add_option("--format", format, "Input format")->check(CLI::IsMember({"csv", "geojson"}));
    app->add_flag("--wgs84", wgs84, "Input coordinates are lat/lon degrees");
    app->add_option("--origin", origin, "Projection origin LAT LON (default: dataset centroid)")->expected(2);
    app->add_option("--min-points", min_points, "Drop trajectories with fewer points");
    app->add_option("--start-box", start_box, "Keep trajectories starting in MINX MINY MAXX MAXY")->expected(4);
    app->add_option("--end-box", end_box, "Keep trajectories ending in MINX MINY MAXX MAXY")->expected(4);
  }

  IngestOptions options() const {
    IngestOptions o;
    o.format = format == "geojson" ? InputFormat::geojson : InputFormat::csv;
    o.wgs84 = wgs84;
    if (origin.size() == 2) o.origin = GeoOrigin{origin[0], origin[1]};
    o.min_points = min_points;
    if (start_box.size() == 4) o.start_box = BoundingBox{start_box[0], start_box[1], start_box[2], start_box[3]};
    if (end_box.size() == 4) o.end_box = BoundingBox{end_box[0], end_box[1], end_box[2], end_box[3]};
    return o;
  }
};

struct APFlags {
  std::string preference = "min-similarity";
  double damping = 0.5;
  std::size_t max_iter = 1000;
  std::size_t convergence_iter = 15;

  void attach(CLI::App* app) {
    app->add_option("--preference", preference,
                    "AP preference: min-similarity (minus the largest distance), min-distance, or a number");
    app->add_option("--damping", damping, "AP damping factor in (0,1)");
    app->add_option("--max-iter", max_iter, "AP sweep limit");
    app->add_option("--convergence-iter", convergence_iter, "AP sweeps with a stable exemplar set");
  }

  APOptions options() const {
    APOptions o;
    if (preference == "min-similarity") {
      o.preference.mode = APPreference::Mode::min_similarity;
    } else if (preference == "min-distance") {
      o.preference.mode = APPreference::Mode::min_distance;
    } else {
      o.preference.mode = APPreference::Mode::value;
      try {
        std::size_t used = 0;
        o.preference.value = std::stod(preference, &used);
        if (used != preference.size()) throw std::invalid_argument(preference);
      } catch (const std::exception&) {
        throw InvalidInput("invalid --preference '" + preference + "'");
      }
    }
    o.damping = damping;
    o.max_iter = max_iter;
    o.convergence_iter = convergence_iter;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory distances, distance matrices and clustering"};
  app.require_subcommand(1);

  // ingest
  commands::IngestJob ingest_job;
  IngestFlags ingest_flags;
  std::string ingest_in, ingest_out;
  auto* ingest_cmd = app.add_subcommand("ingest", "Read, filter and project trajectories to planar CSV");
  ingest_cmd->add_option("input", ingest_in, "Input file")->required();
  ingest_cmd->add_option("-o,--output", ingest_out, "Output CSV (traj_id,x,y,t)")->required();
  ingest_flags.attach(ingest_cmd);

  // synth
  commands::SynthJob synth_job;
  std::string synth_spec, synth_out, synth_labels;
  auto* synth_cmd = app.add_subcommand("synth", "Generate seeded synthetic route bundles");
  synth_cmd->add_option("--spec", synth_spec, "JSON bundle spec (default: three-bundle preset)");
  synth_cmd->add_option("--per-bundle", synth_job.per_bundle, "Trajectories per bundle for the preset");
  synth_cmd->add_option("--seed", synth_job.seed, "Random seed");
  synth_cmd->add_option("-o,--output", synth_out, "Output CSV")->required();
  synth_cmd->add_option("--labels", synth_labels, "Ground-truth labels CSV");

  // matrix
  commands::MatrixJob matrix_job;
  IngestFlags matrix_ingest;
  std::string matrix_in, matrix_out, matrix_csv;
  std::optional<double> eps_d;
  std::vector<double> gap;
  auto* matrix_cmd = app.add_subcommand("matrix", "Compute a pairwise distance matrix");
  matrix_cmd->add_option("input", matrix_in, "Trajectory file")->required();
  matrix_cmd->add_option("-d,--distance", matrix_job.distance,
                         "dtw, lcss, edr, erp, hausdorff, frechet, discrete_frechet, sowd, sspd")
      ->required();
  matrix_cmd->add_option("--eps-d", eps_d, "Matching threshold in meters (required for lcss and edr)");
  matrix_cmd->add_option("--gap", gap, "ERP gap point X Y (default: origin)")->expected(2);
  matrix_cmd->add_option("--owd-density", matrix_job.owd.samples_per_unit, "OWD samples per meter");
  matrix_cmd->add_option("--workers", matrix_job.workers, "Worker threads (0 = all cores)");
  matrix_cmd->add_option("-o,--output", matrix_out, "Binary matrix file")->required();
  matrix_cmd->add_option("--csv", matrix_csv, "Also export the matrix as CSV");
  matrix_ingest.attach(matrix_cmd);

  // cluster
  commands::ClusterJob cluster_job;
  IngestFlags cluster_ingest;
  APFlags cluster_ap;
  std::string cluster_matrix, cluster_dataset, cluster_method = "hca", cluster_linkage = "ward", cluster_out;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a distance matrix");
  cluster_cmd->add_option("matrix", cluster_matrix, "Binary matrix file")->required();
  cluster_cmd->add_option("--dataset", cluster_dataset, "Trajectory file whose ids must match the matrix");
  cluster_cmd->add_option("--method", cluster_method, "hca or ap");
  cluster_cmd->add_option("--linkage", cluster_linkage, "single, average, weighted or ward");
  cluster_cmd->add_option("-k,--k", cluster_job.k, "Cluster count for hca");
  cluster_cmd->add_option("-o,--output", cluster_out, "Output CSV (default: stdout)");
  cluster_ingest.attach(cluster_cmd);
  cluster_ap.attach(cluster_cmd);

  // criteria
  commands::CriteriaJob criteria_job;
  IngestFlags criteria_ingest;
  APFlags criteria_ap;
  std::string criteria_matrix, criteria_dataset, criteria_method = "hca", criteria_linkage = "ward", criteria_out;
  auto* criteria_cmd = app.add_subcommand("criteria", "Between-like / within-like criteria per cluster count");
  criteria_cmd->add_option("matrix", criteria_matrix, "Binary matrix file")->required();
  criteria_cmd->add_option("--dataset", criteria_dataset, "Trajectory file whose ids must match the matrix");
  criteria_cmd->add_option("--method", criteria_method, "hca or ap");
  criteria_cmd->add_option("--linkage", criteria_linkage, "single, average, weighted or ward");
  criteria_cmd->add_option("--k-min", criteria_job.k_min, "Smallest cluster count");
  criteria_cmd->add_option("--k-max", criteria_job.k_max, "Largest cluster count");
  criteria_cmd->add_option("--ap-steps", criteria_job.ap_steps, "AP preference values to sweep");
  criteria_cmd->add_option("-o,--output", criteria_out, "Output CSV (default: stdout)");
  criteria_ingest.attach(criteria_cmd);
  criteria_ap.attach(criteria_cmd);

  // bench
  commands::BenchJob bench_job;
  IngestFlags bench_ingest;
  std::string bench_in;
  auto* bench_cmd = app.add_subcommand("bench", "Time full distance matrices for the six compared distances");
  bench_cmd->add_option("--input", bench_in, "Trajectory file (default: synthetic)");
  bench_cmd->add_option("-n,--count", bench_job.synth_count, "Synthetic trajectory count");
  bench_cmd->add_option("--seed", bench_job.seed, "Random seed");
  bench_cmd->add_option("--eps-d", bench_job.eps_d, "LCSS matching threshold in meters");
  bench_cmd->add_option("--workers", bench_job.workers, "Threads for the parallel column (0 = all cores)");
  bench_cmd->add_option("--repeats", bench_job.repeats, "Timed runs per distance (best is kept)");
  bench_ingest.attach(bench_cmd);

  CLI11_PARSE(app, argc, argv);

  auto with_output = [](const std::string& path, auto&& fn) {
    if (path.empty()) {
      fn(std::cout);
    } else {
      std::ofstream out(path, std::ios::trunc);
      if (!out) throw InvalidInput("cannot open " + path + " for writing");
      fn(out);
    }
  };

  try {
    if (*ingest_cmd) {
      ingest_job.input = ingest_in;
      ingest_job.output = ingest_out;
      ingest_job.options = ingest_flags.options();
      commands::run_ingest(ingest_job, std::cerr);
    } else if (*synth_cmd) {
      if (!synth_spec.empty()) synth_job.spec_file = synth_spec;
      synth_job.output = synth_out;
      if (!synth_labels.empty()) synth_job.labels_output = synth_labels;
      commands::run_synth(synth_job, std::cerr);
    } else if (*matrix_cmd) {
      matrix_job.input = matrix_in;
      matrix_job.ingest = matrix_ingest.options();
      matrix_job.eps_d = eps_d;
      if (gap.size() == 2) matrix_job.gap_point = {gap[0], gap[1]};
      matrix_job.output = matrix_out;
      if (!matrix_csv.empty()) matrix_job.csv_output = matrix_csv;
      commands::run_matrix(matrix_job, std::cerr);
    } else if (*cluster_cmd) {
      cluster_job.matrix = cluster_matrix;
      if (!cluster_dataset.empty()) cluster_job.dataset = cluster_dataset;
      cluster_job.ingest = cluster_ingest.options();
      cluster_job.method = commands::parse_method(cluster_method);
      cluster_job.linkage = parse_linkage(cluster_linkage);
      cluster_job.ap = cluster_ap.options();
      with_output(cluster_out, [&](std::ostream& out) { commands::run_cluster(cluster_job, out, std::cerr); });
    } else if (*criteria_cmd) {
      criteria_job.matrix = criteria_matrix;
      if (!criteria_dataset.empty()) criteria_job.dataset = criteria_dataset;
      criteria_job.ingest = criteria_ingest.options();
      criteria_job.method = commands::parse_method(criteria_method);
      criteria_job.linkage = parse_linkage(criteria_linkage);
      criteria_job.ap = criteria_ap.options();
      with_output(criteria_out, [&](std::ostream& out) { commands::run_criteria(criteria_job, out, std::cerr); });
    } else if (*bench_cmd) {
      if (!bench_in.empty()) bench_job.input = bench_in;
      bench_job.ingest = bench_ingest.options();
      commands::run_bench(bench_job, std::cout, std::cerr);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
