#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trajdist/error.hpp"
#include "trajdist/geometry.hpp"

namespace trajdist {

/// Row-level ingestion failure; `line()` is 1-based (0 when not tied to a line).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Axis-aligned box in input coordinates (x/y, or lon/lat with wgs84 input).
struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(double x, double y) const { return x >= min_x && x <= max_x && y >= min_y && y <= max_y; }
};

enum class InputFormat { csv, geojson };

struct IngestOptions {
  InputFormat format = InputFormat::csv;
  /// Input is lat/lon degrees, projected about `origin` (default: centroid of
  /// the retained points).
  bool wgs84 = false;
  std::optional<GeoOrigin> origin;
  std::size_t min_points = 2;
  std::optional<BoundingBox> start_box;
  std::optional<BoundingBox> end_box;
};

struct Provenance {
  std::string source;
  std::vector<std::string> filters;
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;
  std::size_t trajectories_read = 0;
  std::size_t rejected_min_points = 0;
  std::size_t rejected_start_box = 0;
  std::size_t rejected_end_box = 0;
};

struct TrajectoryDataset {
  std::vector<Trajectory> trajectories;
  /// Set when the coordinates were projected from WGS84.
  std::optional<GeoOrigin> projection_origin;
  Provenance provenance;

  std::vector<std::string> ids() const;
};

/// Reads trajectories. CSV columns are traj_id,x,y[,t] (traj_id,lat,lon[,t]
/// with wgs84); a header row naming the columns is optional. `t` is epoch
/// seconds or ISO-8601. GeoJSON input is a FeatureCollection of LineString
/// features with an "id" (feature member or property) and optional "times".
/// Points of an id are ordered by t when present.
TrajectoryDataset ingest(std::istream& in, const IngestOptions& options, std::string source = "<stream>");
TrajectoryDataset ingest(const std::filesystem::path& path, const IngestOptions& options);

/// Parses epoch seconds ("1213084687", "12.5") or ISO-8601 UTC
/// ("2008-06-10T09:18:07Z", optional fraction and +hh:mm offset).
std::optional<double> parse_time(const std::string& text);

/// Writes traj_id,x,y,t rows (t empty when absent), 17 significant digits.
void write_dataset_csv(const TrajectoryDataset& ds, std::ostream& out);

struct SynthBundle {
  std::vector<Point2D> anchor;
  std::size_t count = 0;
  /// Standard deviation of independent Gaussian noise added to every point.
  double jitter = 0.0;
  /// Each trajectory is shifted perpendicular to the anchor's overall heading
  /// by an amount drawn uniformly from [-lateral_spread/2, lateral_spread/2].
  double lateral_spread = 0.0;
  /// Lateral offsets of route variants inside the bundle. Trajectory c uses
  /// lanes[c % lanes.size()]; empty means a single lane at offset 0.
  std::vector<double> lanes;
  /// Inclusive range of the number of points per trajectory; never fewer than
  /// the anchor's vertices.
  std::size_t min_points = 8;
  std::size_t max_points = 12;
};

struct SynthSpec {
  std::vector<SynthBundle> bundles;
  std::uint64_t seed = 0;
};

struct SynthResult {
  TrajectoryDataset dataset;
  /// Bundle index of every trajectory, aligned with dataset.trajectories.
  std::vector<std::size_t> labels;
};

/// Noisy resamplings of anchor polylines: every trajectory keeps the anchor
/// vertices and adds points at uniform arc-length positions until it has the
/// drawn point count. Deterministic for a given spec and seed.
SynthResult synthesize(const SynthSpec& spec);

/// Three route bundles, each a bent polyline about 2 km long, placed so that
/// the bundles are at least 10x farther apart than the spread inside a bundle.
SynthSpec three_bundle_spec(std::size_t per_bundle, std::uint64_t seed);

/// Reads a SynthSpec from JSON:
/// {"seed": 7, "bundles": [{"anchor": [[x,y],...], "count": 30, "jitter": 5,
///   "lateral_spread": 40, "lanes": [-20, 20], "points": [8, 12]}]}
SynthSpec parse_synth_spec(std::istream& in);

}  // namespace trajdist
