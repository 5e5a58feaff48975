#include "trajdist/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

namespace trajdist::commands {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  return out;
}

void report_provenance(const TrajectoryDataset& ds, std::ostream& log) {
  const Provenance& p = ds.provenance;
  log << "ingested " << ds.trajectories.size() << " of " << p.trajectories_read << " trajectories from "
      << p.source << " (" << p.rows_read << " rows, " << p.rows_rejected << " rejected: " << p.rejected_min_points
      << " below min points, " << p.rejected_start_box << " outside start box, " << p.rejected_end_box
      << " outside end box)\n";
  if (ds.projection_origin) {
    log << "projected about lat=" << ds.projection_origin->lat << " lon=" << ds.projection_origin->lon << "\n";
  }
}

void check_unique_ids(const TrajectoryDataset& ds) {
  std::set<std::string> seen;
  for (const auto& t : ds.trajectories) {
    if (!seen.insert(t.id()).second) throw InvalidInput("duplicate trajectory id '" + t.id() + "'");
  }
}

DistanceMatrix load_checked(const std::filesystem::path& matrix, const std::optional<std::filesystem::path>& dataset,
                            const IngestOptions& ingest_options) {
  DistanceMatrix m = load_matrix(matrix);
  if (dataset) {
    const TrajectoryDataset ds = ingest(*dataset, ingest_options);
    const auto ids = ds.ids();
    check_ids(m, ids);
  }
  return m;
}

}  // namespace

DistanceSpec make_distance_spec(const std::string& name, std::optional<double> eps_d, Point2D gap, OwdParams owd) {
  DistanceSpec spec;
  spec.kind = parse_distance_kind(name);
  spec.eps_d = eps_d;
  spec.gap_point = gap;
  spec.owd = owd;
  spec.validate();
  return spec;
}

DistanceMatrix run_matrix(const MatrixJob& job, std::ostream& log) {
  const DistanceSpec spec = make_distance_spec(job.distance, job.eps_d, job.gap_point, job.owd);
  const TrajectoryDataset ds = ingest(job.input, job.ingest);
  check_unique_ids(ds);
  report_provenance(ds, log);
  DistanceMatrix m = compute_matrix(ds.trajectories, spec, job.workers);
  save_matrix(m, job.output);
  log << "wrote " << m.size() << "x" << m.size() << " " << m.kind() << " matrix to " << job.output.string() << "\n";
  if (job.csv_output) {
    auto out = open_output(*job.csv_output);
    write_matrix_csv(m, out);
  }
  return m;
}

Method parse_method(const std::string& name) {
  if (name == "hca") return Method::hca;
  if (name == "ap") return Method::ap;
  throw InvalidInput("unknown clustering method '" + name + "' (expected hca or ap)");
}

void run_cluster(const ClusterJob& job, std::ostream& out, std::ostream& log) {
  const DistanceMatrix m = load_checked(job.matrix, job.dataset, job.ingest);
  ClusterAssignment assignment;
  std::vector<std::size_t> exemplars;
  if (job.method == Method::hca) {
    const Dendrogram d = hca(m, job.linkage);
    if (!d.inversions.empty()) log << "warning: " << d.inversions.size() << " height inversions in dendrogram\n";
    assignment = cut(d, job.k);
    exemplars = criteria(assignment, m).exemplars;
  } else {
    const APResult r = affinity_propagation(m, job.ap);
    if (!r.converged) log << "warning: affinity propagation did not converge in " << r.iterations << " sweeps\n";
    if (r.fallback_single_exemplar) log << "warning: no exemplar emerged; using a single fallback exemplar\n";
    log << "affinity propagation: " << r.assignment.k << " clusters, preference " << r.state.preference << "\n";
    assignment = r.assignment;
    exemplars = r.exemplars;
  }
  out << "traj_id,label,exemplar_id,is_exemplar\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::size_t ex = exemplars[assignment.labels[i]];
    out << m.ids()[i] << ',' << assignment.labels[i] << ',' << m.ids()[ex] << ',' << (ex == i ? 1 : 0) << '\n';
  }
}

std::vector<CriterionRow> compute_criteria(const CriteriaJob& job, std::ostream& log) {
  const DistanceMatrix m = load_checked(job.matrix, job.dataset, job.ingest);
  if (job.k_min < 1 || job.k_max < job.k_min) throw InvalidInput("criteria needs 1 <= k_min <= k_max");
  if (job.method == Method::hca) return criteria_curve(hca(m, job.linkage), m, job.k_min, job.k_max);

  std::vector<CriterionRow> rows;
  const double lo = -m.max_off_diagonal();
  const double hi = -m.min_off_diagonal();
  const std::size_t steps = std::max<std::size_t>(job.ap_steps, 1);
  for (std::size_t s = 0; s < steps; ++s) {
    APOptions opts = job.ap;
    opts.preference.mode = APPreference::Mode::value;
    opts.preference.value = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(steps - 1);
    const APResult r = affinity_propagation(m, opts);
    if (!r.converged) log << "warning: AP at preference " << opts.preference.value << " did not converge\n";
    const std::size_t k = r.assignment.k;
    if (k < job.k_min || k > job.k_max) continue;
    if (std::any_of(rows.begin(), rows.end(), [&](const CriterionRow& row) { return row.k == k; })) continue;
    rows.push_back(criteria(r.assignment, m));
  }
  std::sort(rows.begin(), rows.end(), [](const CriterionRow& a, const CriterionRow& b) { return a.k < b.k; });
  return rows;
}

void write_criteria_csv(const std::vector<CriterionRow>& rows, const DistanceMatrix& m, std::ostream& out) {
  const auto old = out.precision(17);
  out << "k,bc,wc,exemplars\n";
  for (const auto& row : rows) {
    out << row.k << ',' << row.between << ',' << row.within << ',';
    for (std::size_t c = 0; c < row.exemplars.size(); ++c) out << (c ? ";" : "") << m.ids()[row.exemplars[c]];
    out << '\n';
  }
  out.precision(old);
}

void run_criteria(const CriteriaJob& job, std::ostream& out, std::ostream& log) {
  const auto rows = compute_criteria(job, log);
  write_criteria_csv(rows, load_matrix(job.matrix), out);
}

SynthResult run_synth(const SynthJob& job, std::ostream& log) {
  SynthSpec spec;
  if (job.spec_file) {
    std::ifstream in(*job.spec_file);
    if (!in) throw InvalidInput("cannot open " + job.spec_file->string());
    spec = parse_synth_spec(in);
    if (job.seed) spec.seed = *job.seed;
  } else {
    spec = three_bundle_spec(job.per_bundle, job.seed.value_or(0));
  }
  SynthResult result = synthesize(spec);
  {
    auto out = open_output(job.output);
    write_dataset_csv(result.dataset, out);
  }
  if (job.labels_output) {
    auto out = open_output(*job.labels_output);
    out << "traj_id,bundle\n";
    for (std::size_t k = 0; k < result.labels.size(); ++k) {
      out << result.dataset.trajectories[k].id() << ',' << result.labels[k] << '\n';
    }
  }
  log << "generated " << result.dataset.trajectories.size() << " trajectories in " << spec.bundles.size()
      << " bundles (seed " << spec.seed << ")\n";
  return result;
}

std::vector<Trajectory> bench_trajectories(std::size_t count, std::uint64_t seed) {
  SynthSpec spec = three_bundle_spec(0, seed);
  for (std::size_t b = 0; b < spec.bundles.size(); ++b) {
    spec.bundles[b].count = count / spec.bundles.size() + (b < count % spec.bundles.size() ? 1 : 0);
  }
  spec.bundles.erase(std::remove_if(spec.bundles.begin(), spec.bundles.end(),
                                    [](const SynthBundle& b) { return b.count == 0; }),
                     spec.bundles.end());
  return synthesize(spec).dataset.trajectories;
}

BenchReport run_bench(const BenchJob& job, std::ostream& out, std::ostream& log) {
  std::vector<Trajectory> trajectories;
  if (job.input) {
    TrajectoryDataset ds = ingest(*job.input, job.ingest);
    report_provenance(ds, log);
    trajectories = std::move(ds.trajectories);
  } else {
    trajectories = bench_trajectories(job.synth_count, job.seed);
  }
  const auto specs = table_distances(job.eps_d);
  BenchReport report = trajdist::run_bench(trajectories, specs, job.workers, job.repeats);
  log << "bench: " << report.trajectories << " trajectories, " << report.parallel_workers << " workers, "
      << report.environment << "\n";
  const auto old = out.precision(6);
  out << "distance,serial_seconds,parallel_seconds\n";
  for (const auto& row : report.rows) {
    out << row.distance << ',' << row.serial_seconds << ',' << row.parallel_seconds << '\n';
  }
  out.precision(old);
  return report;
}

TrajectoryDataset run_ingest(const IngestJob& job, std::ostream& log) {
  TrajectoryDataset ds = ingest(job.input, job.options);
  check_unique_ids(ds);
  report_provenance(ds, log);
  auto out = open_output(job.output);
  write_dataset_csv(ds, out);
  return ds;
}

}  // namespace trajdist::commands
