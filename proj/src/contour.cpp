#include "cusplab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "cusplab/errors.hpp"

namespace cusplab {
namespace {

template <class F>
double bisect(F&& f, double lo, double hi) {
  // f(lo) > 0 > f(hi) or the reverse; returns the midpoint of the final bracket
  const double flo = f(lo);
  for (int i = 0; i < 400; ++i) {
    const double m = 0.5 * (lo + hi);
    if (m == lo || m == hi) break;
    if (std::abs(hi - lo) <= 1e-15 * std::max(1.0, std::abs(m))) break;
    const double fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (flo > 0))
      lo = m;
    else
      hi = m;
  }
  return 0.5 * (lo + hi);
}

double residual_tol(const PotentialField& field, double c, double rel) {
  const bool closed = field.density().kind() == DensityKind::lebesgue;
  return (closed ? rel : std::max(rel, 2.0 * field.quadrature_options().rel_tol)) * c;
}

}  // namespace

AxisCrossings axis_crossings(const PotentialField& field, double c, double search_radius) {
  if (!(c > 0) || !std::isfinite(c)) throw InputError("level must be > 0", "c");
  const double L = field.density().length();
  auto f = [&](double z) { return field(0.0, z) - c; };

  AxisCrossings ax;
  double step = 1.0;
  double hi = L + step;
  while (f(hi) > 0) {
    step *= 2;
    hi = L + step;
    if (hi > search_radius)
      throw RangeError("upper axis crossing beyond the search radius for c=" + std::to_string(c));
  }
  ax.z2 = bisect(f, L, hi);

  if (c >= field.v00()) {
    ax.z1 = 0.0;
  } else {
    double lo = -1.0;
    while (f(lo) > 0) {
      lo *= 2;
      if (-lo > search_radius)
        throw RangeError("lower axis crossing beyond the search radius for c=" + std::to_string(c));
    }
    ax.z1 = bisect(f, lo, 0.0);
  }
  const double tol = residual_tol(field, c, 1e-10);
  if (std::abs(f(ax.z2)) > tol || (ax.z1 < 0 && std::abs(f(ax.z1)) > tol))
    throw AccuracyError("axis crossing residual above tolerance", ax.z2);
  return ax;
}

double log_radius_at(const PotentialField& field, double c, double z, const SearchOptions& opt) {
  if (!(c > 0)) throw InputError("level must be > 0", "c");
  auto f = [&](double t) { return field.at_log_radius(t, z) - c; };
  const double t_max = std::log(opt.search_radius);

  double t_lo, t_hi;  // f(t_lo) > 0 > f(t_hi)
  double step = 1.0;
  const double t0 = 0.0;
  if (f(t0) > 0) {
    t_lo = t0;
    t_hi = t0 + step;
    while (f(t_hi) > 0) {
      t_lo = t_hi;
      step *= 2;
      t_hi = t0 + step;
      if (t_hi > t_max) {
        std::ostringstream s;
        s << "no radius bracket below the search radius at z=" << z << " for c=" << c;
        throw RangeError(s.str());
      }
    }
  } else {
    t_hi = t0;
    t_lo = t0 - step;
    while (!(f(t_lo) > 0)) {
      t_hi = t_lo;
      step *= 2;
      t_lo = t0 - step;
      if (t_lo < opt.min_log_radius) {
        if (!(f(opt.min_log_radius) > 0)) {
          std::ostringstream s;
          s << "radius below exp(" << opt.min_log_radius << ") at z=" << z << " for c=" << c;
          throw RangeError(s.str());
        }
        t_lo = opt.min_log_radius;
        break;
      }
    }
  }
  const double t = bisect(f, t_lo, t_hi);
  const double res = std::abs(f(t));
  if (!(res <= residual_tol(field, c, opt.rel_tol))) {
    std::ostringstream s;
    s << "contour residual " << res << " above tolerance at z=" << z;
    throw AccuracyError(s.str(), std::exp(t));
  }
  return t;
}

double radius_at(const PotentialField& field, double c, double z, const SearchOptions& opt) {
  return std::exp(log_radius_at(field, c, z, opt));
}

double ContourCurve::max_residual() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.residual);
  return m;
}

std::vector<Point> ContourCurve::points() const {
  std::vector<Point> p;
  p.reserve(samples.size());
  for (const auto& s : samples) p.emplace_back(s.r, s.z);
  return p;
}

std::vector<ContourSample> sample_contour(const PotentialField& field, double c,
                                          const std::vector<double>& zs,
                                          const SearchOptions& opt) {
  std::vector<ContourSample> out(zs.size());
  auto work = [&](std::size_t i) {
    ContourSample s;
    s.z = zs[i];
    s.log_r = log_radius_at(field, c, s.z, opt);
    s.r = std::exp(s.log_r);
    s.residual = std::abs(field.at_log_radius(s.log_r, s.z) - c);
    out[i] = s;
  };
  const std::size_t nt = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  if (zs.size() < 64 || nt == 1) {
    for (std::size_t i = 0; i < zs.size(); ++i) work(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(nt);
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < nt; ++k)
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = k; i < zs.size(); i += nt) work(i);
      } catch (...) {
        errs[k] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

ContourCurve trace_contour(const PotentialField& field, double c, int n, Grading grading,
                           double ratio, const SearchOptions& opt) {
  if (n < 16) throw InputError("contour needs n >= 16 stations, got " + std::to_string(n), "n");
  if (!(ratio > 0 && ratio < 1)) throw InputError("grading ratio must lie in (0,1)", "ratio");
  const AxisCrossings ax = axis_crossings(field, c, opt.search_radius);
  ContourCurve cc;
  cc.level = c;
  cc.z1 = ax.z1;
  cc.z2 = ax.z2;
  const double span = ax.z2 - ax.z1;

  std::vector<double> g;  // fractions of the span in (0,1)
  if (grading == Grading::uniform) {
    for (int i = 1; i <= n; ++i) g.push_back(static_cast<double>(i) / (n + 1));
  } else {
    // geometric toward z1, floored where r would leave the double range
    double g_floor = 1e-12;
    if (c >= field.v00()) {
      SearchOptions deep = opt;
      deep.min_log_radius = -1e300;
      auto f = [&](double gg) {
        return log_radius_at(field, c, ax.z1 + gg * span, deep) - (opt.min_log_radius + 20.0);
      };
      double lo = 1e-12, hi = 0.5;
      if (f(lo) < 0) g_floor = bisect(f, lo, hi) * 1.001;
    }
    const int ng = n / 2;
    const double rg = std::max(ratio, std::pow(g_floor / 0.5, 1.0 / (ng - 1)));
    for (int k = ng - 1; k >= 0; --k) g.push_back(0.5 * std::pow(rg, k));
    const int nu = n - ng;
    for (int i = 1; i <= nu; ++i) g.push_back(0.5 + 0.5 * i / (nu + 1));
  }
  std::vector<double> zs;
  for (double gg : g) zs.push_back(ax.z1 + gg * span);

  cc.samples.push_back({ax.z1, 0.0, -INFINITY, 0.0});
  for (const auto& s : sample_contour(field, c, zs, opt)) cc.samples.push_back(s);
  cc.samples.push_back({ax.z2, 0.0, -INFINITY, 0.0});
  return cc;
}

std::vector<double> default_rate_grid() { return {1e-1, 1e-2, 1e-3}; }

CuspRateReport cusp_rate_bounds(const PotentialField& field, double c, double alpha, double beta,
                                double delta, const std::vector<double>& z_grid,
                                RateVariant variant) {
  const double half = (c - field.v00()) / 2.0;
  if (!(alpha > 0 && alpha < half && half < beta)) {
    std::ostringstream s;
    s << "rate parameters must satisfy 0 < alpha < (c - V(0,0))/2 = " << half << " < beta";
    throw InputError(s.str(), alpha >= half || !(alpha > 0) ? "alpha" : "beta");
  }
  if (variant == RateVariant::monotone && !(delta > 0 && delta < 1))
    throw InputError("delta must lie in (0,1)", "delta");
  const auto& rho = field.density();
  const double L = rho.length();

  CuspRateReport rep;
  rep.level = c;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.delta = delta;
  rep.variant = variant;
  rep.trend_target = field.v00() + 2 * alpha;
  rep.all_pass = true;
  SearchOptions deep;
  deep.min_log_radius = -1e300;
  for (double z : z_grid) {
    if (!(z > 0 && z <= L)) throw InputError("rate grid z must lie in (0, L]", "z_grid");
    CuspRateRow row;
    row.z = z;
    row.log_r = log_radius_at(field, c, z, deep);
    if (variant == RateVariant::dini) {
      row.log_lower = -beta / rho(z);
      row.log_upper = -alpha / rho(z);
    } else {
      if ((1 + delta) * z > L) throw InputError("(1+delta) z exceeds the rod length", "delta");
      row.log_lower = -beta / rho((1 - delta) * z);
      row.log_upper = -alpha / rho((1 + delta) * z);
    }
    row.pass = row.log_lower < row.log_r && row.log_r < row.log_upper;
    row.trend = field.at_log_radius(-alpha / rho(z), z);
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace cusplab

namespace cusplab {

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  const double a = f(lo), b = f(hi);
  if ((a > 0) == (b > 0) && a != 0 && b != 0)
    throw RangeError("root is not bracketed");
  return bisect(f, lo, hi);
}

Point project_to_level(const PotentialField& field, double c, Point p) {
  for (int it = 0; it < 40; ++it) {
    const double v = field(p) - c;
    if (std::abs(v) <= 1e-14 * c) break;
    const Point g = field.gradient(p.x(), p.y());
    const double g2 = g.squaredNorm();
    if (!(g2 > 0) || !std::isfinite(g2)) break;
    Point q = p - (v / g2) * g;
    if (q.x() < 0) q.x() = 0.5 * p.x();
    p = q;
  }
  return p;
}

}  // namespace cusplab
