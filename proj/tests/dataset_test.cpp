#include "trajdist/dataset.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "trajdist/sspd.hpp"

namespace trajdist {
namespace {

const char* kFixture =
    "traj_id,x,y,t\n"
    "a,0,0,0\n"
    "a,1,0,1\n"
    "b,5,5,10\n"
    "a,2,0,2\n"
    "b,6,5,11\n";

TrajectoryDataset read(const std::string& text, const IngestOptions& opts = {}) {
  std::istringstream in(text);
  return ingest(in, opts);
}

std::size_t error_line(const std::string& text, const IngestOptions& opts = {}) {
  try {
    read(text, opts);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

TEST(Ingest, GroupsRowsByIdInFirstAppearanceOrder) {
  const auto ds = read(kFixture);
  ASSERT_EQ(ds.trajectories.size(), 2u);
  EXPECT_EQ(ds.ids(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.trajectories[0].size(), 3u);
  EXPECT_EQ(ds.trajectories[0][2], (Point2D{2, 0}));
  EXPECT_EQ(ds.provenance.rows_read, 5u);
  EXPECT_EQ(ds.provenance.rows_rejected, 0u);
  EXPECT_FALSE(ds.projection_origin);
}

TEST(Ingest, HeaderIsOptional) {
  const auto ds = read("a,0,0\na,1,1\n");
  ASSERT_EQ(ds.trajectories.size(), 1u);
  EXPECT_FALSE(ds.trajectories[0].timestamps());
}

TEST(Ingest, NamedColumnsInAnyOrder) {
  const auto ds = read("t,y,x,traj_id\n0,1,2,q\n1,3,4,q\n");
  ASSERT_EQ(ds.trajectories.size(), 1u);
  EXPECT_EQ(ds.trajectories[0][0], (Point2D{2, 1}));
}

TEST(Ingest, OrdersByTimestamp) {
  const auto ds = read("id,x,y,t\nz,2,0,20\nz,0,0,0\nz,1,0,10\n");
  const auto& t = ds.trajectories[0];
  EXPECT_EQ(t[0], (Point2D{0, 0}));
  EXPECT_EQ(t[2], (Point2D{2, 0}));
  EXPECT_EQ(*t.timestamps(), (std::vector<double>{0, 10, 20}));
}

TEST(Ingest, RepeatedTimestampIsAnError) {
  EXPECT_EQ(error_line("id,x,y,t\nz,0,0,0\nz,1,0,5\nz,2,0,5\n"), 4u);
}

TEST(Ingest, MixedTimedAndUntimedRows) { EXPECT_EQ(error_line("id,x,y,t\nz,0,0,0\nz,1,0,\n"), 3u); }

TEST(Ingest, MalformedRowsReportLineNumbers) {
  EXPECT_EQ(error_line("traj_id,x,y\na,0,0\na,zero,1\n"), 3u);
  EXPECT_EQ(error_line("traj_id,x,y\na,0,0\n\na,1\n"), 4u);
  EXPECT_EQ(error_line("traj_id,x,y,t\na,0,0,yesterday\n"), 2u);
  EXPECT_EQ(error_line("traj_id,x,y\n,0,0\n"), 2u);
  EXPECT_EQ(error_line("foo,bar,baz\n"), 1u);
  EXPECT_EQ(error_line("a,0,0\na,\"1,1\n"), 2u);
}

TEST(Ingest, MinPointsFilterAndEmptyResult) {
  IngestOptions opts;
  opts.min_points = 3;
  const auto ds = read(kFixture, opts);
  EXPECT_EQ(ds.ids(), std::vector<std::string>{"a"});
  EXPECT_EQ(ds.provenance.rejected_min_points, 1u);
  EXPECT_EQ(ds.provenance.rows_rejected, 2u);
  opts.min_points = 100;
  try {
    read(kFixture, opts);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("empty result"), std::string::npos);
  }
}

TEST(Ingest, BoundingBoxFilters) {
  IngestOptions opts;
  opts.start_box = BoundingBox{4, 4, 7, 7};
  EXPECT_EQ(read(kFixture, opts).ids(), std::vector<std::string>{"b"});
  opts.start_box.reset();
  opts.end_box = BoundingBox{1.5, -1, 2.5, 1};
  const auto ds = read(kFixture, opts);
  EXPECT_EQ(ds.ids(), std::vector<std::string>{"a"});
  EXPECT_EQ(ds.provenance.rejected_end_box, 1u);
  EXPECT_EQ(ds.provenance.filters.size(), 2u);
}

TEST(Ingest, Wgs84OneDegreeOffsets) {
  IngestOptions opts;
  opts.wgs84 = true;
  opts.origin = GeoOrigin{0.0, 0.0};
  const auto ds = read("traj_id,lat,lon\ng,0,0\ng,0,1\ng,1,1\n", opts);
  const auto& t = ds.trajectories[0];
  EXPECT_NEAR(t[1].x, 111194.9, 0.05);
  EXPECT_NEAR(t[1].y, 0.0, 1e-9);
  EXPECT_NEAR(t[2].y, 111194.9, 0.05);
  EXPECT_EQ(ds.projection_origin->lat, 0.0);
}

TEST(Ingest, Wgs84PositionalLayoutAndCentroidOrigin) {
  IngestOptions opts;
  opts.wgs84 = true;
  const auto ds = read("g,10,20\ng,12,20\n", opts);
  ASSERT_TRUE(ds.projection_origin);
  EXPECT_DOUBLE_EQ(ds.projection_origin->lat, 11.0);
  EXPECT_DOUBLE_EQ(ds.projection_origin->lon, 20.0);
  const auto& t = ds.trajectories[0];
  EXPECT_NEAR(t[0].y, -111194.9, 0.05);
  EXPECT_NEAR(t[1].y, 111194.9, 0.05);
  EXPECT_EQ(error_line("g,95,20\ng,12,20\n", opts), 1u);
}

TEST(Ingest, GeoJson) {
  const std::string doc = R"({"type": "FeatureCollection", "features": [
    {"type": "Feature", "id": "r1", "geometry": {"type": "LineString", "coordinates": [[0, 0], [3, 4]]},
     "properties": {"times": ["2024-01-01T00:00:00Z", "2024-01-01T00:01:00Z"]}},
    {"type": "Feature", "geometry": {"type": "LineString", "coordinates": [[1, 1], [2, 2], [3, 3]]},
     "properties": {"id": 7}}]})";
  IngestOptions opts;
  opts.format = InputFormat::geojson;
  const auto ds = read(doc, opts);
  EXPECT_EQ(ds.ids(), (std::vector<std::string>{"r1", "7"}));
  EXPECT_EQ(ds.trajectories[0][1], (Point2D{3, 4}));
  EXPECT_EQ((*ds.trajectories[0].timestamps())[1] - (*ds.trajectories[0].timestamps())[0], 60.0);
  EXPECT_THROW(read(R"({"type": "Feature"})", opts), ParseError);
  EXPECT_THROW(read("{", opts), ParseError);
}

TEST(ParseTime, EpochAndIso) {
  EXPECT_EQ(parse_time("1700000000"), 1700000000.0);
  EXPECT_EQ(parse_time("12.5"), 12.5);
  EXPECT_EQ(parse_time("1970-01-02T00:00:00Z"), 86400.0);
  EXPECT_EQ(parse_time("1970-01-01T01:00:00+01:00"), 0.0);
  EXPECT_EQ(parse_time("2000-03-01T00:00:00Z"), 951868800.0);
  EXPECT_FALSE(parse_time("noon"));
  EXPECT_FALSE(parse_time("2024-13-01T00:00:00Z"));
}

TEST(Ingest, CsvRoundTrip) {
  const auto ds = read(kFixture);
  std::ostringstream out;
  write_dataset_csv(ds, out);
  const auto back = read(out.str());
  ASSERT_EQ(back.ids(), ds.ids());
  for (std::size_t i = 0; i < ds.trajectories.size(); ++i) {
    EXPECT_EQ(back.trajectories[i].size(), ds.trajectories[i].size());
    for (std::size_t k = 0; k < ds.trajectories[i].size(); ++k) EXPECT_EQ(back.trajectories[i][k], ds.trajectories[i][k]);
    EXPECT_EQ(*back.trajectories[i].timestamps(), *ds.trajectories[i].timestamps());
  }
}

TEST(Synth, DeterministicForASeed) {
  const auto a = synthesize(three_bundle_spec(10, 9));
  const auto b = synthesize(three_bundle_spec(10, 9));
  const auto c = synthesize(three_bundle_spec(10, 10));
  ASSERT_EQ(a.dataset.ids(), b.dataset.ids());
  EXPECT_EQ(a.labels, b.labels);
  bool differs = false;
  for (std::size_t i = 0; i < a.dataset.trajectories.size(); ++i) {
    const auto pa = a.dataset.trajectories[i].points(), pb = b.dataset.trajectories[i].points();
    EXPECT_TRUE(std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()));
    const auto pc = c.dataset.trajectories[i].points();
    differs = differs || !std::equal(pa.begin(), pa.end(), pc.begin(), pc.end());
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(a.dataset.trajectories.size(), 30u);
  EXPECT_EQ(a.dataset.ids()[11], "b1_0001");
}

TEST(Synth, NoiselessTrajectoriesLieOnTheAnchor) {
  SynthSpec spec;
  spec.seed = 3;
  spec.bundles.push_back({{{0, 0}, {100, 0}, {150, 80}}, 5, 0.0, 0.0, {}, 5, 12});
  const auto r = synthesize(spec);
  ASSERT_EQ(r.dataset.trajectories.size(), 5u);
  const auto& ts = r.dataset.trajectories;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_GE(ts[i].size(), 5u);
    EXPECT_LE(ts[i].size(), 12u);
    for (std::size_t j = 0; j < i; ++j) EXPECT_LT(sspd(ts[i], ts[j]), 1e-9);
  }
}

TEST(Synth, BundlesAreWellSeparated) {
  const auto r = synthesize(three_bundle_spec(15, 11));
  const auto& ts = r.dataset.trajectories;
  double intra = 0, inter = INFINITY;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double d = sspd(ts[i], ts[j]);
      if (r.labels[i] == r.labels[j]) {
        intra += d;
        ++count;
      } else {
        inter = std::min(inter, d);
      }
    }
  }
  EXPECT_GT(inter, 5.0 * intra / static_cast<double>(count));
}

TEST(Synth, LanesAreAssignedRoundRobin) {
  SynthSpec spec;
  spec.bundles.push_back({{{0, 0}, {100, 0}}, 4, 0.0, 0.0, {-10.0, 10.0}, 2, 2});
  const auto r = synthesize(spec);
  const auto& ts = r.dataset.trajectories;
  // The chord runs along +x, so the lane offsets move along y.
  EXPECT_DOUBLE_EQ(ts[0][0].y, -10.0);
  EXPECT_DOUBLE_EQ(ts[1][0].y, 10.0);
  EXPECT_DOUBLE_EQ(ts[2][1].y, -10.0);
}

TEST(Synth, RejectsDegenerateSpecs) {
  SynthSpec spec;
  EXPECT_THROW(synthesize(spec), InvalidInput);
  spec.bundles.push_back({{{0, 0}, {0, 0}}, 3, 1.0, 0.0, {}, 2, 4});
  EXPECT_THROW(synthesize(spec), InvalidInput);
  spec.bundles[0].anchor = {{0, 0}, {10, 0}, {0, 0}};
  EXPECT_THROW(synthesize(spec), InvalidInput);
  spec.bundles[0].anchor = {{0, 0}, {10, 0}};
  spec.bundles[0].count = 0;
  EXPECT_THROW(synthesize(spec), InvalidInput);
}

TEST(Synth, ParsesJsonSpec) {
  std::istringstream in(R"({"seed": 4, "bundles": [{"anchor": [[0,0],[50,0]], "count": 3, "jitter": 0.5,
                            "lanes": [-5, 5], "points": [3, 6]}]})");
  const auto spec = parse_synth_spec(in);
  EXPECT_EQ(spec.seed, 4u);
  ASSERT_EQ(spec.bundles.size(), 1u);
  EXPECT_EQ(spec.bundles[0].count, 3u);
  EXPECT_EQ(spec.bundles[0].lanes, (std::vector<double>{-5, 5}));
  EXPECT_EQ(spec.bundles[0].max_points, 6u);
  std::istringstream bad(R"({"bundles": [{"count": 3}]})");
  EXPECT_THROW(parse_synth_spec(bad), ParseError);
}

}  // namespace
}  // namespace trajdist
