#include "trajdist/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace trajdist {

namespace {

struct RawPoint {
  double u = 0.0;  // x, or longitude
  double v = 0.0;  // y, or latitude
  std::optional<double> t;
  std::size_t line = 0;
};

struct RawTrajectory {
  std::string id;
  std::vector<RawPoint> points;
};

std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quote");
  fields.push_back(std::move(cur));
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t\r");
    const auto e = f.find_last_not_of(" \t\r");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Columns {
  std::size_t id = 0, u = 1, v = 2;
  std::optional<std::size_t> t = 3;
};

std::optional<Columns> header_columns(const std::vector<std::string>& fields, bool wgs84) {
  Columns cols;
  std::optional<std::size_t> id, u, v, t;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const std::string name = lower(fields[k]);
    if (name == "traj_id" || name == "id" || name == "trajectory") id = k;
    else if (!wgs84 && name == "x") u = k;
    else if (!wgs84 && name == "y") v = k;
    else if (wgs84 && (name == "lon" || name == "lng" || name == "longitude")) u = k;
    else if (wgs84 && (name == "lat" || name == "latitude")) v = k;
    else if (name == "t" || name == "time" || name == "timestamp") t = k;
  }
  if (!id || !u || !v) return std::nullopt;
  return Columns{*id, *u, *v, t};
}

std::vector<RawTrajectory> read_csv(std::istream& in, bool wgs84, Provenance& prov) {
  std::vector<RawTrajectory> out;
  std::unordered_map<std::string, std::size_t> index;
  // Positional layout: traj_id,x,y,t or traj_id,lat,lon,t.
  Columns cols = wgs84 ? Columns{0, 2, 1, 3} : Columns{0, 1, 2, 3};
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto fields = split_csv(line, line_no);
    if (first_content) {
      first_content = false;
      const bool numeric = fields.size() >= 3 && parse_number(fields[1]) && parse_number(fields[2]);
      if (!numeric) {
        const auto named = header_columns(fields, wgs84);
        if (!named) {
          throw ParseError(line_no, wgs84 ? "header must name traj_id, lat and lon columns"
                                          : "header must name traj_id, x and y columns");
        }
        cols = *named;
        continue;
      }
    }
    ++prov.rows_read;
    const std::size_t needed = std::max({cols.id, cols.u, cols.v}) + 1;
    if (fields.size() < needed) {
      throw ParseError(line_no, "expected at least " + std::to_string(needed) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    RawPoint p;
    p.line = line_no;
    const auto u = parse_number(fields[cols.u]);
    const auto v = parse_number(fields[cols.v]);
    if (!u || !v || !std::isfinite(*u) || !std::isfinite(*v)) throw ParseError(line_no, "malformed coordinate");
    p.u = *u;
    p.v = *v;
    if (wgs84 && (std::abs(p.v) > 90.0 || std::abs(p.u) > 180.0)) {
      throw ParseError(line_no, "latitude/longitude out of range");
    }
    if (cols.t && *cols.t < fields.size() && !fields[*cols.t].empty()) {
      p.t = parse_time(fields[*cols.t]);
      if (!p.t) throw ParseError(line_no, "malformed timestamp '" + fields[*cols.t] + "'");
    }
    const std::string& id = fields[cols.id];
    if (id.empty()) throw ParseError(line_no, "empty trajectory id");
    auto [it, inserted] = index.emplace(id, out.size());
    if (inserted) out.push_back({id, {}});
    out[it->second].points.push_back(p);
  }
  return out;
}

std::vector<RawTrajectory> read_geojson(std::istream& in, Provenance& prov) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid GeoJSON: ") + e.what());
  }
  if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features") || !doc["features"].is_array()) {
    throw ParseError(0, "GeoJSON input must be a FeatureCollection");
  }
  std::vector<RawTrajectory> out;
  std::size_t feature_no = 0;
  for (const auto& f : doc["features"]) {
    ++feature_no;
    const std::string where = "feature " + std::to_string(feature_no) + ": ";
    const auto& geom = f.value("geometry", nlohmann::json::object());
    if (geom.value("type", "") != "LineString") throw ParseError(0, where + "geometry must be a LineString");
    const auto props = f.value("properties", nlohmann::json::object());
    std::string id;
    const nlohmann::json* id_node = f.contains("id") ? &f["id"] : (props.contains("id") ? &props["id"] : nullptr);
    if (id_node && id_node->is_string()) id = id_node->get<std::string>();
    else if (id_node && id_node->is_number_integer()) id = std::to_string(id_node->get<long long>());
    else id = std::to_string(feature_no - 1);
    const auto& coords = geom.value("coordinates", nlohmann::json::array());
    const nlohmann::json times = props.value("times", nlohmann::json());
    if (!times.is_null() && (!times.is_array() || times.size() != coords.size())) {
      throw ParseError(0, where + "'times' must be an array matching the coordinates");
    }
    RawTrajectory raw{id, {}};
    for (std::size_t k = 0; k < coords.size(); ++k) {
      ++prov.rows_read;
      const auto& c = coords[k];
      if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
        throw ParseError(0, where + "malformed coordinate " + std::to_string(k));
      }
      RawPoint p;
      p.u = c[0].get<double>();
      p.v = c[1].get<double>();
      if (!times.is_null()) {
        if (times[k].is_number()) p.t = times[k].get<double>();
        else if (times[k].is_string()) p.t = parse_time(times[k].get<std::string>());
        if (!p.t) throw ParseError(0, where + "malformed time " + std::to_string(k));
      }
      raw.points.push_back(p);
    }
    out.push_back(std::move(raw));
  }
  return out;
}

std::string describe_box(const char* name, const BoundingBox& b) {
  std::ostringstream os;
  os << name << "=[" << b.min_x << "," << b.min_y << "," << b.max_x << "," << b.max_y << "]";
  return os.str();
}

// Days since 1970-01-01 for a proleptic Gregorian date.
long long days_from_civil(int y, unsigned m, unsigned d) {
  using namespace std::chrono;
  return sys_days{year{y} / month{m} / day{d}}.time_since_epoch().count();
}

Point2D point_on(const std::vector<Point2D>& poly, const std::vector<double>& cumulative, double s) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
  std::size_t seg = it == cumulative.begin() ? 0 : static_cast<std::size_t>(it - cumulative.begin()) - 1;
  seg = std::min(seg, poly.size() - 2);
  const double len = cumulative[seg + 1] - cumulative[seg];
  const double t = len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
  return Segment{poly[seg], poly[seg + 1]}.at(t);
}

}  // namespace

std::vector<std::string> TrajectoryDataset::ids() const {
  std::vector<std::string> out;
  out.reserve(trajectories.size());
  for (const auto& t : trajectories) out.push_back(t.id());
  return out;
}

std::optional<double> parse_time(const std::string& text) {
  if (auto v = parse_number(text)) return std::isfinite(*v) ? v : std::nullopt;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, consumed = 0;
  char sep = 0;
  double sec = 0.0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%lf%n", &y, &mo, &d, &sep, &h, &mi, &sec, &consumed) != 7) {
    return std::nullopt;
  }
  if ((sep != 'T' && sep != ' ') || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec < 0 ||
      sec >= 61) {
    return std::nullopt;
  }
  using namespace std::chrono;
  if (!year_month_day{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}}.ok()) {
    return std::nullopt;
  }
  double offset = 0.0;
  const std::string rest = text.substr(static_cast<std::size_t>(consumed));
  if (rest == "Z" || rest.empty()) {
    offset = 0.0;
  } else if ((rest[0] == '+' || rest[0] == '-') && rest.size() == 6 && rest[3] == ':') {
    int oh = 0, om = 0;
    if (std::sscanf(rest.c_str() + 1, "%2d:%2d", &oh, &om) != 2) return std::nullopt;
    offset = (rest[0] == '+' ? 1.0 : -1.0) * (oh * 3600.0 + om * 60.0);
  } else {
    return std::nullopt;
  }
  const double days = static_cast<double>(days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)));
  return days * 86400.0 + h * 3600.0 + mi * 60.0 + sec - offset;
}

TrajectoryDataset ingest(std::istream& in, const IngestOptions& options, std::string source) {
  TrajectoryDataset ds;
  Provenance& prov = ds.provenance;
  prov.source = std::move(source);
  std::vector<RawTrajectory> raw =
      options.format == InputFormat::csv ? read_csv(in, options.wgs84, prov) : read_geojson(in, prov);
  prov.trajectories_read = raw.size();

  const std::size_t min_points = std::max<std::size_t>(options.min_points, 2);
  prov.filters.push_back("min_points=" + std::to_string(min_points));
  if (options.start_box) prov.filters.push_back(describe_box("start_box", *options.start_box));
  if (options.end_box) prov.filters.push_back(describe_box("end_box", *options.end_box));

  std::vector<RawTrajectory> kept;
  for (auto& r : raw) {
    const bool timed = r.points.front().t.has_value();
    for (const auto& p : r.points) {
      if (p.t.has_value() != timed) {
        throw ParseError(p.line, "trajectory '" + r.id + "' mixes rows with and without timestamps");
      }
    }
    if (timed) {
      std::stable_sort(r.points.begin(), r.points.end(), [](const RawPoint& a, const RawPoint& b) { return *a.t < *b.t; });
      for (std::size_t k = 1; k < r.points.size(); ++k) {
        if (!(*r.points[k].t > *r.points[k - 1].t)) {
          throw ParseError(r.points[k].line, "trajectory '" + r.id + "' has non-monotone timestamps (repeated t)");
        }
      }
    }
    if (r.points.size() < min_points) {
      ++prov.rejected_min_points;
      prov.rows_rejected += r.points.size();
      continue;
    }
    if (options.start_box && !options.start_box->contains(r.points.front().u, r.points.front().v)) {
      ++prov.rejected_start_box;
      prov.rows_rejected += r.points.size();
      continue;
    }
    if (options.end_box && !options.end_box->contains(r.points.back().u, r.points.back().v)) {
      ++prov.rejected_end_box;
      prov.rows_rejected += r.points.size();
      continue;
    }
    kept.push_back(std::move(r));
  }
  if (kept.empty()) throw InvalidInput("empty result: no trajectory of " + prov.source + " passed the filters");

  if (options.wgs84) {
    GeoOrigin origin;
    if (options.origin) {
      origin = *options.origin;
    } else {
      double lat = 0.0, lon = 0.0;
      std::size_t count = 0;
      for (const auto& r : kept) {
        for (const auto& p : r.points) {
          lon += p.u;
          lat += p.v;
          ++count;
        }
      }
      origin = {lat / static_cast<double>(count), lon / static_cast<double>(count)};
    }
    ds.projection_origin = origin;
  }

  for (auto& r : kept) {
    std::vector<Point2D> pts;
    std::optional<std::vector<double>> times;
    if (r.points.front().t) times.emplace();
    for (const auto& p : r.points) {
      pts.push_back(options.wgs84 ? project_wgs84(p.v, p.u, *ds.projection_origin) : Point2D{p.u, p.v});
      if (times) times->push_back(*p.t);
    }
    ds.trajectories.emplace_back(r.id, std::move(pts), std::move(times));
  }
  return ds;
}

TrajectoryDataset ingest(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return ingest(in, options, path.string());
}

void write_dataset_csv(const TrajectoryDataset& ds, std::ostream& out) {
  const auto old = out.precision(17);
  out << "traj_id,x,y,t\n";
  for (const auto& t : ds.trajectories) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      out << t.id() << ',' << t[k].x << ',' << t[k].y << ',';
      if (t.timestamps()) out << (*t.timestamps())[k];
      out << '\n';
    }
  }
  out.precision(old);
}

SynthResult synthesize(const SynthSpec& spec) {
  if (spec.bundles.empty()) throw InvalidInput("synth spec has no bundles");
  SynthResult result;
  std::mt19937_64 rng(spec.seed);
  for (std::size_t b = 0; b < spec.bundles.size(); ++b) {
    const SynthBundle& bundle = spec.bundles[b];
    const std::string where = "bundle " + std::to_string(b) + ": ";
    if (bundle.anchor.size() < 2) throw InvalidInput(where + "anchor needs at least 2 points");
    for (const auto& p : bundle.anchor) {
      if (!is_finite(p)) throw InvalidInput(where + "anchor has a non-finite point");
    }
    std::vector<double> cumulative{0.0};
    for (std::size_t k = 0; k + 1 < bundle.anchor.size(); ++k) {
      cumulative.push_back(cumulative.back() + euclidean(bundle.anchor[k], bundle.anchor[k + 1]));
    }
    const double length = cumulative.back();
    const Point2D chord = bundle.anchor.back() - bundle.anchor.front();
    const double chord_len = std::hypot(chord.x, chord.y);
    if (length <= 0.0 || chord_len <= 0.0) throw InvalidInput(where + "degenerate anchor (zero length or closed)");
    if (bundle.count == 0) throw InvalidInput(where + "count must be positive");
    if (!(bundle.jitter >= 0.0) || !(bundle.lateral_spread >= 0.0)) {
      throw InvalidInput(where + "jitter and lateral_spread must be >= 0");
    }
    for (double lane : bundle.lanes) {
      if (!std::isfinite(lane)) throw InvalidInput(where + "lane offsets must be finite");
    }
    if (bundle.min_points < 2 || bundle.max_points < bundle.min_points) {
      throw InvalidInput(where + "point range must satisfy 2 <= min <= max");
    }
    const Point2D normal{-chord.y / chord_len, chord.x / chord_len};

    std::uniform_int_distribution<std::size_t> count_dist(bundle.min_points, bundle.max_points);
    std::uniform_real_distribution<double> pos_dist(0.0, length);
    std::uniform_real_distribution<double> shift_dist(-0.5, 0.5);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t c = 0; c < bundle.count; ++c) {
      const std::size_t n = count_dist(rng);
      std::vector<double> positions = cumulative;
      for (std::size_t k = positions.size(); k < n; ++k) positions.push_back(pos_dist(rng));
      std::sort(positions.begin(), positions.end());
      const double lane = bundle.lanes.empty() ? 0.0 : bundle.lanes[c % bundle.lanes.size()];
      const double shift = lane + bundle.lateral_spread * shift_dist(rng);
      std::vector<Point2D> pts;
      pts.reserve(positions.size());
      for (double s : positions) {
        Point2D p = point_on(bundle.anchor, cumulative, s) + shift * normal;
        p.x += bundle.jitter * noise(rng);
        p.y += bundle.jitter * noise(rng);
        pts.push_back(p);
      }
      std::ostringstream id;
      id << 'b' << b << '_' << std::setw(4) << std::setfill('0') << c;
      result.dataset.trajectories.emplace_back(id.str(), std::move(pts));
      result.labels.push_back(b);
    }
  }
  result.dataset.provenance.source = "synth(seed=" + std::to_string(spec.seed) + ")";
  result.dataset.provenance.trajectories_read = result.dataset.trajectories.size();
  return result;
}

SynthSpec three_bundle_spec(std::size_t per_bundle, std::uint64_t seed) {
  const std::vector<std::vector<Point2D>> anchors{
      {{0, 0}, {600, 50}, {1200, 300}, {1900, 350}},
      {{0, 1200}, {500, 1600}, {1100, 1700}, {1800, 2300}},
      {{2600, -300}, {2700, 400}, {2500, 1100}, {2900, 1800}},
  };
  SynthSpec spec;
  spec.seed = seed;
  for (const auto& anchor : anchors) {
    SynthBundle b;
    b.anchor = anchor;
    b.count = per_bundle;
    b.jitter = 1.5;
    b.lateral_spread = 2.0;
    b.lanes = {-30.0, -20.0, 20.0, 30.0};
    spec.bundles.push_back(std::move(b));
  }
  return spec;
}

SynthSpec parse_synth_spec(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid synth spec JSON: ") + e.what());
  }
  SynthSpec spec;
  try {
    spec.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& b : doc.at("bundles")) {
      SynthBundle bundle;
      for (const auto& p : b.at("anchor")) bundle.anchor.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      bundle.count = b.at("count").get<std::size_t>();
      bundle.jitter = b.value("jitter", 0.0);
      bundle.lateral_spread = b.value("lateral_spread", 0.0);
      if (b.contains("lanes")) bundle.lanes = b["lanes"].get<std::vector<double>>();
      if (b.contains("points")) {
        bundle.min_points = b["points"].at(0).get<std::size_t>();
        bundle.max_points = b["points"].at(1).get<std::size_t>();
      }
      spec.bundles.push_back(std::move(bundle));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid synth spec: ") + e.what());
  }
  return spec;
}

}  // namespace trajdist
