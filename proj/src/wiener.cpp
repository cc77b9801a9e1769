#include "cusplab/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cusplab/errors.hpp"

namespace cusplab {

WienerProfile profile_exp_log_squared() {
  return {"z^(-log z)", [](double lz) { return -lz * lz; }, 0.5, 0.0};
}

WienerProfile profile_log_power() {
  // r < 1 needs -log z > 1
  return {"(-log z)^(log z)", [](double lz) { return lz * std::log(-lz); }, 0.25, 0.0};
}

WienerProfile profile_power(double k) {
  if (!(k > 0)) throw InputError("power profile needs k > 0", "k");
  std::ostringstream s;
  s << "z^" << k;
  return {s.str(), [k](double lz) { return k * lz; }, 0.5, 0.0};
}

WienerProfile profile_from_field(const PotentialField& field, double c, std::string name) {
  const AxisCrossings ax = axis_crossings(field, c);
  if (ax.z1 != 0.0) throw InputError("field profile needs a level c >= V(0,0)", "c");
  WienerProfile p;
  p.name = std::move(name);
  p.z_max = 0.99 * ax.z2;
  p.z_min = field.density().kind() == DensityKind::lebesgue ? 1e-15 : 1e-3;
  p.log_r = [field, c](double lz) {
    SearchOptions deep;
    deep.min_log_radius = -1e300;
    return log_radius_at(field, c, std::exp(lz), deep);
  };
  return p;
}

WienerProfile profile_from_curve(const ContourCurve& curve, std::string name) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : curve.samples)
    if (s.r > 0 && s.z > 0) pts.emplace_back(std::log(s.z), s.log_r);
  if (pts.size() < 2) throw InputError("contour input needs at least two samples with r, z > 0");
  std::sort(pts.begin(), pts.end());
  WienerProfile p;
  p.name = std::move(name);
  p.z_min = std::exp(pts.front().first);
  p.z_max = std::exp(pts.back().first);
  p.log_r = [pts](double lz) {
    if (lz < pts.front().first - 1e-12 || lz > pts.back().first + 1e-12)
      throw DomainError("z outside the tabulated contour range");
    auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(lz, -HUGE_VAL));
    if (it == pts.begin()) return it->second;
    if (it == pts.end()) return pts.back().second;
    const auto& a = *(it - 1);
    const auto& b = *it;
    const double w = (lz - a.first) / (b.first - a.first);
    return a.second + w * (b.second - a.second);
  };
  return p;
}

const char* to_string(WienerClass c) {
  switch (c) {
    case WienerClass::singular: return "singular";
    case WienerClass::regular: return "regular";
    default: return "inconclusive";
  }
}

int default_start_index(const WienerProfile& profile, double q) {
  if (!(q > 0 && q < 1)) throw InputError("q must lie in (0,1)", "q");
  const int j = static_cast<int>(std::ceil(std::log(profile.z_max) / std::log(q) - 1e-12));
  return std::max(1, j);
}

int default_end_index(const WienerProfile& profile, double q, int j0) {
  if (profile.z_min <= 0) return j0 + 199;
  return static_cast<int>(std::floor(std::log(profile.z_min) / std::log(q)));
}

WienerReport log_series(const WienerProfile& profile, double q, int j0, int j_max) {
  if (!(q > 0 && q < 1)) throw InputError("q must lie in (0,1)", "q");
  if (j0 < 0 || j_max < j0) throw InputError("invalid j range", "j_max");
  WienerReport rep;
  rep.profile = profile.name;
  rep.q = q;
  rep.j0 = j0;
  rep.j_max = j_max;
  const double lq = std::log(q);
  double sum = 0.0;
  for (int j = j0; j <= j_max; ++j) {
    const double lr = profile.log_r(j * lq);
    if (!(lr < 0)) {
      std::ostringstream s;
      s << "profile " << profile.name << " has r >= 1 at z = q^" << j;
      throw DomainError(s.str());
    }
    const double t = 1.0 / std::abs(lr);
    rep.terms.push_back(t);
    sum += t;
    rep.partial_sums.push_back(sum);
  }
  return rep;
}

WienerReport log_series(const WienerProfile& profile, double q) {
  const int j0 = default_start_index(profile, q);
  return log_series(profile, q, j0, default_end_index(profile, q, j0));
}

namespace {
constexpr std::size_t kMinTerms = 20;
}

WienerClass classify(const std::vector<double>& terms, int j0) {
  if (terms.size() < kMinTerms) return WienerClass::inconclusive;
  switch (classify_series(terms, j0).verdict) {
    case SeriesVerdict::convergent: return WienerClass::singular;
    case SeriesVerdict::divergent: return WienerClass::regular;
    default: return WienerClass::inconclusive;
  }
}

WienerReport& classify(WienerReport& report) {
  if (report.terms.size() < kMinTerms) {
    report.diagnostics = {};
    report.diagnostics.note = "only " + std::to_string(report.terms.size()) +
                              " terms in range; at least 20 are needed for a verdict";
    report.classification = WienerClass::inconclusive;
    return report;
  }
  report.diagnostics = classify_series(report.terms, report.j0);
  report.classification = classify(report.terms, report.j0);
  return report;
}

}  // namespace cusplab
