#include "cusplab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cusplab/errors.hpp"

namespace cusplab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTinyRadius = 1e-12;

// log(x + sqrt(x^2 + r^2)) with r = exp(t), without cancellation for x < 0
double logsum(double x, double t) {
  const double r = std::exp(t);
  if (x > 0) return std::log(x + std::hypot(x, r));
  if (x == 0) return t;
  const double ax = -x;
  return 2.0 * t - std::log(ax + std::hypot(ax, r));
}

// asinh(x / r) for r = exp(t), valid when x/r overflows
double asinh_over(double x, double t) {
  if (x == 0) return 0.0;
  if (x > 0) return logsum(x, t) - t;
  return -(logsum(-x, t) - t);
}

std::string point_str(double r, double z) {
  std::ostringstream s;
  s << "(r=" << r << ", z=" << z << ")";
  return s.str();
}

double lebesgue_log(double t, double z) {
  const double r = std::exp(t);
  if (t == -kInf && z > 0 && z <= 1)
    throw DomainError("closed form evaluated on the rod at " + point_str(0, z));
  const double s0 = std::hypot(r, z);
  const double s1 = std::hypot(r, 1.0 - z);
  const double diff = (1.0 - 2.0 * z) / (s1 + s0);  // s1 - s0
  if (z == 0) return diff;
  double lg;
  if (z < 0) {
    lg = std::log1p((diff + 1.0) / (s0 - z));
  } else if (z > 1) {
    lg = std::log1p((1.0 - diff) / (z - 1.0 + s1));
  } else {
    lg = logsum(1.0 - z, t) - 2.0 * t + std::log(z + s0);
  }
  return z * lg + diff;
}

double kellogg_log(double t, double z) {
  const double r = std::exp(t);
  if (t == -kInf && z > 0)
    throw DomainError("closed form evaluated on the singular axis at " + point_str(0, z));
  const double s0 = std::hypot(r, z);
  if (z == 0) return s0;
  return z * logsum(-z, t) + s0;
}

}  // namespace

// ---------------------------------------------------------------- density

DensityProfile DensityProfile::lebesgue() {
  DensityProfile d;
  d.kind_ = DensityKind::lebesgue;
  d.length_ = 1.0;
  d.p_ = 1.0;
  return d;
}

DensityProfile DensityProfile::power(double p, double length) {
  if (!(p > 0) || !std::isfinite(p)) throw InputError("power exponent must be > 0", "p");
  if (!(length > 0) || !std::isfinite(length))
    throw InputError("rod length must be > 0", "L");
  DensityProfile d;
  d.kind_ = DensityKind::power;
  d.length_ = length;
  d.p_ = p;
  return d;
}

DensityProfile DensityProfile::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw InputError("tabulated density needs at least 2 samples", "samples");
  if (samples.front().first != 0.0 || samples.front().second != 0.0)
    throw InputError("tabulated density must start at (0, 0)", "samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first))
      throw InputError("tabulated z must be strictly increasing (sample " +
                           std::to_string(i) + ")", "samples");
    if (!(samples[i].second > 0) || !std::isfinite(samples[i].second))
      throw InputError("tabulated rho must be positive on (0, L] (sample " +
                           std::to_string(i) + ")", "samples");
  }
  DensityProfile d;
  d.kind_ = DensityKind::tabulated;
  d.length_ = samples.back().first;
  d.samples_ = std::move(samples);
  return d;
}

std::string DensityProfile::name() const {
  switch (kind_) {
    case DensityKind::lebesgue: return "lebesgue";
    case DensityKind::power: {
      std::ostringstream s;
      s << "power(p=" << p_ << ",L=" << length_ << ")";
      return s.str();
    }
    default: return "tabulated(" + std::to_string(samples_.size()) + ")";
  }
}

double DensityProfile::operator()(double z) const {
  if (!(z >= 0 && z <= length_)) {
    std::ostringstream s;
    s << "density evaluated at z=" << z << " outside [0, " << length_ << "]";
    throw DomainError(s.str());
  }
  switch (kind_) {
    case DensityKind::lebesgue: return z;
    case DensityKind::power: return std::pow(z, p_);
    default: {
      auto it = std::upper_bound(samples_.begin(), samples_.end(), z,
                                 [](double v, const auto& s) { return v < s.first; });
      if (it == samples_.end()) return samples_.back().second;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (z - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
}

std::vector<double> DensityProfile::breakpoints() const {
  std::vector<double> b;
  if (kind_ == DensityKind::tabulated) {
    for (const auto& s : samples_) b.push_back(s.first);
    return b;
  }
  b.push_back(0.0);
  for (int i = 0; i <= 600; ++i) b.push_back(length_ * std::pow(10.0, -30.0 + 30.0 * i / 600.0));
  for (int i = 1; i < 400; ++i) b.push_back(length_ * i / 400.0);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double eval_density(const DensityProfile& profile, double z) { return profile(z); }

// ---------------------------------------------------------------- closed forms

double eval_closed_form_log(double log_r, double z, ClosedForm variant) {
  if (std::isnan(log_r) || std::isnan(z) || log_r == kInf)
    throw DomainError("closed form needs finite arguments");
  return variant == ClosedForm::lebesgue ? lebesgue_log(log_r, z) : kellogg_log(log_r, z);
}

double eval_closed_form(double r, double z, ClosedForm variant) {
  if (!(r >= 0)) throw DomainError("negative radius " + point_str(r, z));
  return eval_closed_form_log(std::log(r), z, variant);
}

// ---------------------------------------------------------------- field

PotentialField::PotentialField(DensityProfile density, QuadratureOptions quad)
    : density_(std::move(density)), quad_(quad) {
  const double L = density_.length();
  auto f = [this](double zeta) { return density_(zeta) / zeta; };
  QuadratureResult q = integrate(f, 0.0, L, quad_, density_.kind() == DensityKind::tabulated
                                                       ? density_.breakpoints()
                                                       : std::vector<double>{});
  if (!q.converged || !std::isfinite(q.value))
    throw AccuracyError("criticality integral of rho(zeta)/zeta did not converge", q.value);
  v00_ = q.value;
}

double PotentialField::generic(double r, double t, double z) const {
  const double L = density_.length();
  const auto& rho = density_;
  const bool tab = rho.kind() == DensityKind::tabulated;
  auto check = [&](const QuadratureResult& q) {
    if (!q.converged || !std::isfinite(q.value))
      throw AccuracyError("potential quadrature did not converge at " + point_str(r, z), q.value);
    return q.value;
  };

  const bool on_span = z > 0 && z <= L;
  if (r < kTinyRadius && on_span) {
    // singularity subtraction: the remainder integrand is bounded as r -> 0
    const double rz = rho(z);
    auto f = [&](double zeta) { return (rho(zeta) - rz) / std::hypot(zeta - z, r); };
    std::vector<double> bp = tab ? rho.breakpoints() : std::vector<double>{};
    bp.push_back(z);
    const double rest = check(integrate(f, 0.0, L, quad_, bp));
    return rest + rz * (asinh_over(L - z, t) + asinh_over(z, t));
  }

  if (r == 0) {
    // off the rod: z <= 0 or z > L
    auto f = [&](double zeta) { return rho(zeta) / std::abs(zeta - z); };
    return check(integrate(f, 0.0, L, quad_, tab ? rho.breakpoints() : std::vector<double>{}));
  }

  // zeta = z + r sinh(s) makes the integrand smooth at the near-singular point
  const double s_lo = std::asinh(-z / r);
  const double s_hi = std::asinh((L - z) / r);
  auto f = [&](double s) {
    const double zeta = std::clamp(z + r * std::sinh(s), 0.0, L);
    return rho(zeta);
  };
  std::vector<double> bp;
  if (on_span) bp.push_back(0.0);
  if (tab)
    for (const auto& smp : rho.samples()) bp.push_back(std::asinh((smp.first - z) / r));
  return check(integrate(f, s_lo, s_hi, quad_, bp));
}

double PotentialField::quadrature(double r, double z) const {
  if (!(r >= 0) || !std::isfinite(z)) throw DomainError("invalid point " + point_str(r, z));
  const double L = density_.length();
  if (r == 0 && z > 0 && z <= L) return kInf;
  if (r < kTinyRadius && r > 0 && z > 0 && z <= L)
    throw AccuracyError("raw quadrature refused for r < 1e-12 on the rod span at " +
                            point_str(r, z),
                        generic(r, std::log(r), z));
  if (r == 0 && z == 0) return v00_;
  return generic(r, std::log(r), z);
}

double PotentialField::at_log_radius(double t, double z) const {
  if (std::isnan(t) || !std::isfinite(z)) throw DomainError("invalid log-radius argument");
  const double L = density_.length();
  const double r = std::exp(t);
  if (t == -kInf && z > 0 && z <= L) return kInf;
  if (density_.kind() == DensityKind::lebesgue) return lebesgue_log(t, z);
  if (r == 0 && z == 0) return v00_;
  return generic(r, t, z);
}

double PotentialField::operator()(double r, double z) const {
  if (!(r >= 0) || !std::isfinite(r) || !std::isfinite(z))
    throw DomainError("invalid point " + point_str(r, z));
  const double L = density_.length();
  if (r == 0 && z > 0 && z <= L) return kInf;
  if (r == 0 && z == 0) return v00_;
  if (density_.kind() == DensityKind::lebesgue) return lebesgue_log(std::log(r), z);
  return generic(r, std::log(r), z);
}

Point PotentialField::gradient(double r, double z) const {
  if (density_.kind() == DensityKind::lebesgue && r > 0) {
    const double t = std::log(r);
    const double s0 = std::hypot(r, z), s1 = std::hypot(r, 1.0 - z);
    const double dz = asinh_over(1.0 - z, t) + asinh_over(z, t) - 1.0 / s1;
    const double dr = (r * r - z * (1.0 - z)) / (r * s1) - s0 / r;
    return {dr, dz};
  }
  const double h = 1e-6 * std::max(r, 1e-3);
  const double rl = std::max(r - h, 0.0), rh = r + h;
  const double dr = ((*this)(rh, z) - (*this)(rl, z)) / (rh - rl);
  const double dz = ((*this)(r, z + h) - (*this)(r, z - h)) / (2 * h);
  return {dr, dz};
}

double eval_potential(const PotentialField& field, double r, double z) { return field(r, z); }

// ---------------------------------------------------------------- sector

SectorReport sector_bound_check(const PotentialField& field, double alpha,
                                const std::vector<Point>& points) {
  if (!(alpha >= 0 && alpha < M_PI / 2)) throw InputError("alpha must lie in [0, pi/2)", "alpha");
  const double ta = std::tan(alpha);
  SectorReport rep;
  rep.bound = field.v00() / std::cos(alpha);
  rep.max_value = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!(p.x() >= 0) || p.y() > ta * p.x() + 1e-15 * std::abs(p.x()))
      throw InputError("sample " + std::to_string(i) + " " + point_str(p.x(), p.y()) +
                           " lies outside the sector",
                       "points/" + std::to_string(i));
  }
  for (const Point& p : points) rep.max_value = std::max(rep.max_value, field(p));
  rep.pass = rep.max_value <= rep.bound * (1.0 + field.quadrature_options().rel_tol);
  return rep;
}

// ---------------------------------------------------------------- dini

const char* to_string(DiniClass c) {
  switch (c) {
    case DiniClass::dini: return "dini";
    case DiniClass::not_dini: return "not-dini";
    default: return "inconclusive";
  }
}

std::vector<double> dini_default_grid(int decades, int per_decade) {
  std::vector<double> g;
  for (int i = -decades * per_decade; i <= 0; ++i)
    g.push_back(std::pow(10.0, static_cast<double>(i) / per_decade));
  return g;
}

DiniReport dini_report(const DensityProfile& profile, const std::vector<double>& t_grid) {
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::remove_if(ts.begin(), ts.end(), [](double t) { return !(t > 0); }), ts.end());
  if (ts.size() < 2) throw InputError("t grid needs at least two positive values", "t_grid");

  const double L = profile.length();
  const std::vector<double> base = profile.breakpoints();
  DiniReport rep;
  rep.modulus.emplace_back(0.0, 0.0);
  double running = 0.0;
  for (double t : ts) {
    double w = 0.0;
    if (t >= L) {
      w = std::abs(profile(L) - profile(0.0));
    } else {
      auto consider = [&](double x) {
        if (x < 0 || x > L - t) return;
        w = std::max(w, std::abs(profile(x + t) - profile(x)));
      };
      for (double s : base) {
        consider(s);
        consider(s - t);
      }
      consider(L - t);
    }
    running = std::max(running, w);
    rep.modulus.emplace_back(t, running);
  }

  // omega linear in t between grid points, integrated exactly against dt/t;
  // binned by decade below t = 1
  double total = 0.0;
  std::vector<double> bins;
  for (std::size_t i = 2; i < rep.modulus.size(); ++i) {
    const auto [t0, w0] = rep.modulus[i - 1];
    const auto [t1, w1] = rep.modulus[i];
    if (t0 >= 1.0) break;
    const double hi = std::min(t1, 1.0);
    const double c1 = (w1 - w0) / (t1 - t0);
    const double piece = (w0 - c1 * t0) * std::log(hi / t0) + c1 * (hi - t0);
    total += piece;
    const double mid = std::sqrt(t0 * hi);
    const int k = static_cast<int>(std::floor(-std::log10(mid)));
    if (k < 0) continue;
    if (static_cast<int>(bins.size()) <= k) bins.resize(k + 1, 0.0);
    bins[k] += piece;
  }
  // drop a partially covered last decade
  const double tmin = ts.front();
  const int full = static_cast<int>(std::floor(-std::log10(tmin) + 1e-9));
  if (static_cast<int>(bins.size()) > full) bins.resize(full);
  rep.decade_increments = bins;

  bool all_pos = bins.size() >= 20;
  for (double b : bins) all_pos = all_pos && b > 0;
  if (all_pos) {
    rep.series = classify_series(bins, 1);
    if (rep.series.verdict == SeriesVerdict::convergent) rep.classification = DiniClass::dini;
    if (rep.series.verdict == SeriesVerdict::divergent) rep.classification = DiniClass::not_dini;
  } else {
    rep.series.note = "fewer than 20 positive decade increments";
  }
  // tail below tmin estimated with omega(t) ~ omega(tmin) t / tmin
  const double w_min = rep.modulus[1].second;
  if (rep.classification != DiniClass::not_dini) rep.integral = total + w_min;
  return rep;
}

}  // namespace cusplab
