#include "trajdist/distance.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "trajdist/sspd.hpp"

namespace trajdist {

namespace {

constexpr std::array<std::pair<DistanceKind, std::string_view>, 9> kNames{{
    {DistanceKind::dtw, "dtw"},
    {DistanceKind::lcss, "lcss"},
    {DistanceKind::edr, "edr"},
    {DistanceKind::erp, "erp"},
    {DistanceKind::hausdorff, "hausdorff"},
    {DistanceKind::frechet, "frechet"},
    {DistanceKind::discrete_frechet, "discrete_frechet"},
    {DistanceKind::sowd, "sowd"},
    {DistanceKind::sspd, "sspd"},
}};

bool needs_eps(DistanceKind k) { return k == DistanceKind::lcss || k == DistanceKind::edr; }

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const std::vector<DistanceKind>& all_distance_kinds() {
  static const std::vector<DistanceKind> kinds = [] {
    std::vector<DistanceKind> out;
    for (const auto& [k, _] : kNames) out.push_back(k);
    return out;
  }();
  return kinds;
}

std::string_view distance_name(DistanceKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  if (name == "owd") return DistanceKind::sowd;
  if (name == "dlcss") return DistanceKind::lcss;
  throw InvalidInput("unknown distance '" + std::string(name) + "'");
}

void DistanceSpec::validate() const {
  if (needs_eps(kind)) {
    if (!eps_d) {
      throw InvalidInput("distance " + std::string(distance_name(kind)) +
                         " requires the eps_d matching threshold");
    }
    WarpingParams{*eps_d, gap_point}.validate();
  }
  if (kind == DistanceKind::erp && !is_finite(gap_point)) throw InvalidInput("ERP gap point must be finite");
  if (kind == DistanceKind::sowd && !(owd.samples_per_unit > 0.0 && std::isfinite(owd.samples_per_unit))) {
    throw InvalidInput("owd sampling density must be positive");
  }
}

std::string DistanceSpec::describe() const {
  std::string out(distance_name(kind));
  switch (kind) {
    case DistanceKind::lcss:
    case DistanceKind::edr:
      out += "(eps_d=" + (eps_d ? fmt_double(*eps_d) : std::string("?")) + ")";
      break;
    case DistanceKind::erp:
      out += "(gap=" + fmt_double(gap_point.x) + "," + fmt_double(gap_point.y) + ")";
      break;
    case DistanceKind::sowd:
      out += "(samples_per_unit=" + fmt_double(owd.samples_per_unit) +
             ",min_samples=" + std::to_string(owd.min_samples_per_segment) + ")";
      break;
    default:
      break;
  }
  return out;
}

double DistanceSpec::operator()(const Trajectory& a, const Trajectory& b) const {
  switch (kind) {
    case DistanceKind::dtw:
      return dtw(a, b);
    case DistanceKind::lcss:
      validate();
      return dlcss(a, b, {*eps_d, gap_point});
    case DistanceKind::edr:
      validate();
      return static_cast<double>(edr(a, b, {*eps_d, gap_point}));
    case DistanceKind::erp:
      return erp(a, b, {0.0, gap_point});
    case DistanceKind::hausdorff:
      return hausdorff(a, b);
    case DistanceKind::frechet:
      return frechet(a, b);
    case DistanceKind::discrete_frechet:
      return discrete_frechet(a, b);
    case DistanceKind::sowd:
      return sowd(a, b, owd);
    case DistanceKind::sspd:
      return sspd(a, b);
  }
  throw InvalidInput("unhandled distance kind");
}

}  // namespace trajdist
