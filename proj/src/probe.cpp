#include "cusplab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cusplab/contour.hpp"
#include "cusplab/errors.hpp"

namespace cusplab {

const char* to_string(PathKind k) {
  switch (k) {
    case PathKind::level_curve: return "level-curve";
    case PathKind::axis_below: return "axis-below";
    default: return "ray";
  }
}

const char* to_string(LimitClass c) {
  switch (c) {
    case LimitClass::regular_like: return "regular-like";
    case LimitClass::semiregular_like: return "semiregular-like";
    default: return "strongly-irregular-like";
  }
}

std::vector<ProbeStation> path_stations(const PotentialField& field, const PathSpec& spec) {
  if (spec.stations < 1) throw InputError("path needs at least one station", "stations");
  if (!(spec.factor > 0 && spec.factor < 1)) throw InputError("station factor must lie in (0,1)", "factor");
  if (!(spec.start > 0)) throw InputError("path start must be > 0", "start");
  SearchOptions deep;
  deep.min_log_radius = -1e300;
  std::vector<ProbeStation> st;
  for (int k = 0; k < spec.stations; ++k) {
    const double d = spec.start * std::pow(spec.factor, k);
    ProbeStation s;
    switch (spec.kind) {
      case PathKind::level_curve:
        s.z = d;
        s.log_r = log_radius_at(field, spec.level, d, deep);
        s.r = std::exp(s.log_r);
        break;
      case PathKind::axis_below:
        s.z = -d;
        s.r = 0.0;
        s.log_r = -std::numeric_limits<double>::infinity();
        break;
      case PathKind::ray:
        s.r = d * std::sin(spec.angle);
        s.z = d * std::cos(spec.angle);
        s.log_r = std::log(s.r);
        break;
    }
    st.push_back(s);
  }
  return st;
}

ProbePath sample_path(const ProbeSource& source, const PotentialField& field, const PathSpec& spec) {
  ProbePath path;
  path.spec = spec;
  path.stations = path_stations(field, spec);
  for (std::size_t k = 0; k < path.stations.size(); ++k) {
    ProbeStation& s = path.stations[k];
    if (auto* o = std::get_if<OracleSource>(&source)) {
      s.value = two_constant_oracle_log(*o->field, o->A, o->B, o->alpha, o->beta, s.log_r, s.z);
    } else if (auto* f = std::get_if<FemSource>(&source)) {
      const double zc = f->solution->mesh->z_cut;
      if (s.z < 2 * zc) {
        std::ostringstream m;
        m << "station z=" << s.z << " lies in the truncation zone (z < 2 z_cut = " << 2 * zc << ")";
        throw DomainError(m.str());
      }
      s.value = f->solution->interpolate(Point(s.r, s.z));
    } else {
      const auto& w = std::get<WosSource>(source);
      const Point p(s.r, s.z);
      const double d0 = distance_to_boundary(*w.domain, p);
      WosOptions opt = w.options;
      opt.eps = std::min(opt.eps, w.eps_fraction * d0);
      opt.seed = walk_seed(w.options.seed, 0x5157A7100000ull + k);
      const WosEstimate e = estimate(*w.domain, w.score, Eigen::Vector3d(s.r, 0.0, s.z), opt);
      s.value = e.mean;
      s.std_error = e.std_error;
    }
  }
  const auto& st = path.stations;
  path.limit = st.back().value;
  double lo = path.limit, hi = path.limit;
  for (std::size_t k = st.size() >= 3 ? st.size() - 3 : 0; k < st.size(); ++k) {
    lo = std::min(lo, st[k].value);
    hi = std::max(hi, st[k].value);
  }
  path.spread = hi - lo;
  return path;
}

LimitSet limit_set_estimate(const std::vector<ProbePath>& paths, double datum, double tol) {
  if (paths.size() < 3) throw InputError("limit set estimate needs at least 3 paths", "paths");
  LimitSet ls;
  ls.lo = ls.hi = paths.front().limit;
  for (const auto& p : paths) {
    ls.lo = std::min(ls.lo, p.limit);
    ls.hi = std::max(ls.hi, p.limit);
  }
  if (ls.hi - ls.lo <= tol)
    ls.classification = std::abs(0.5 * (ls.lo + ls.hi) - datum) <= tol ? LimitClass::regular_like
                                                                       : LimitClass::semiregular_like;
  else
    ls.classification = LimitClass::strongly_irregular_like;
  return ls;
}

NonlocalityReport nonlocality_experiment(const CrossSection& cs, const BumpDatum& bump,
                                         const std::vector<double>& levels,
                                         const std::vector<double>& station_z,
                                         const WosOptions& opt, int tail) {
  if (!(bump.eps >= 0)) throw InputError("bump amplitude must be >= 0", "eps");
  if (levels.empty() || station_z.empty()) throw InputError("experiment needs levels and stations");
  for (double c : levels)
    if (!(c > cs.field.v00() && c < cs.B))
      throw InputError("probe levels must lie in (V(0,0), B)", "levels");

  BoundaryData data;
  data.set(BoundaryTag::outer_level, bump);
  data.set(BoundaryTag::inner_level, 0.0);
  const WosDomain domain(cs);
  WosSource src{&domain, score_boundary_data(data), opt};

  NonlocalityReport rep;
  rep.eps_amplitude = bump.eps;
  rep.floor = std::numeric_limits<double>::infinity();
  bool all_zero = true;
  SearchOptions deep;
  deep.min_log_radius = -1e300;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    ProbePath path;
    path.spec.kind = PathKind::level_curve;
    path.spec.level = levels[li];
    path.spec.stations = static_cast<int>(station_z.size());
    std::ostringstream id;
    id << "L" << levels[li];
    path.spec.id = id.str();
    for (std::size_t k = 0; k < station_z.size(); ++k) {
      ProbeStation s;
      s.z = station_z[k];
      s.log_r = log_radius_at(cs.field, levels[li], s.z, deep);
      s.r = std::exp(s.log_r);
      const double d0 = distance_to_boundary(domain, Point(s.r, s.z));
      WosOptions o = opt;
      o.eps = std::min(opt.eps, src.eps_fraction * d0);
      o.seed = walk_seed(opt.seed, (li << 20) + k);
      const WosEstimate e = estimate(domain, src.score, Eigen::Vector3d(s.r, 0.0, s.z), o);
      s.value = e.mean;
      s.std_error = e.std_error;
      all_zero = all_zero && s.value == 0.0;
      path.stations.push_back(s);
    }
    const auto& st = path.stations;
    path.limit = st.back().value;
    const std::size_t from = st.size() > static_cast<std::size_t>(tail) ? st.size() - tail : 0;
    double lo = path.limit, hi = path.limit;
    for (std::size_t k = from; k < st.size(); ++k) {
      rep.floor = std::min(rep.floor, st[k].value - 3.0 * st[k].std_error);
      lo = std::min(lo, st[k].value);
      hi = std::max(hi, st[k].value);
    }
    path.spread = hi - lo;
    rep.paths.push_back(path);
  }
  rep.verdict = rep.floor > 0 ? "non-vanishing" : (all_zero ? "vanishing" : "inconclusive");
  return rep;
}

}  // namespace cusplab
