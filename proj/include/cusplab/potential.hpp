#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cusplab/quadrature.hpp"
#include "cusplab/series.hpp"

namespace cusplab {

// meridian point: (r, z)
using Point = Eigen::Vector2d;

enum class DensityKind { lebesgue, power, tabulated };

class DensityProfile {
 public:
  static DensityProfile lebesgue();
  static DensityProfile power(double p, double length = 1.0);
  // samples must start at (0,0), with z strictly increasing and rho > 0 after
  static DensityProfile tabulated(std::vector<std::pair<double, double>> samples);

  DensityKind kind() const { return kind_; }
  double length() const { return length_; }
  double exponent() const { return p_; }
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }
  std::string name() const;

  // rho(z); DomainError outside [0, L]
  double operator()(double z) const;

  // abscissae where rho may be non-smooth or where the modulus scan looks
  std::vector<double> breakpoints() const;

 private:
  DensityProfile() = default;
  DensityKind kind_ = DensityKind::lebesgue;
  double length_ = 1.0;
  double p_ = 1.0;
  std::vector<std::pair<double, double>> samples_;
};

double eval_density(const DensityProfile& profile, double z);

enum class ClosedForm { lebesgue, kellogg };

// Closed forms with logarithms in cancellation-free form. DomainError on the
// singular set (r = 0 with 0 < z <= 1 for lebesgue, r = 0 with z > 0 for kellogg).
double eval_closed_form(double r, double z, ClosedForm variant);
// same, with the radius given as log r (handles r far below the double range)
double eval_closed_form_log(double log_r, double z, ClosedForm variant);

class PotentialField {
 public:
  // Computes V(0,0). Throws AccuracyError when the criticality integral
  // does not converge.
  explicit PotentialField(DensityProfile density, QuadratureOptions quad = {});

  const DensityProfile& density() const { return density_; }
  const QuadratureOptions& quadrature_options() const { return quad_; }
  double v00() const { return v00_; }

  // V(r,z); +infinity on the rod (r = 0, 0 < z <= L)
  double operator()(double r, double z) const;
  double at_log_radius(double log_r, double z) const;
  double operator()(const Point& p) const { return (*this)(p.x(), p.y()); }

  // Raw adaptive quadrature, split at clamp(z,0,L). Refuses r < 1e-12 for z
  // on the rod span with AccuracyError.
  double quadrature(double r, double z) const;

  // (dV/dr, dV/dz)
  Point gradient(double r, double z) const;

  // V(0,z) for z off the rod
  double on_axis(double z) const { return (*this)(0.0, z); }

 private:
  double generic(double r, double log_r, double z) const;

  DensityProfile density_;
  QuadratureOptions quad_;
  double v00_ = 0.0;
};

double eval_potential(const PotentialField& field, double r, double z);

struct SectorReport {
  double max_value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// points must satisfy z <= tan(alpha) r; InputError names the first offender
SectorReport sector_bound_check(const PotentialField& field, double alpha,
                                const std::vector<Point>& points);

enum class DiniClass { dini, not_dini, inconclusive };
const char* to_string(DiniClass c);

struct DiniReport {
  std::vector<std::pair<double, double>> modulus;  // (t, omega(t)), starting at (0,0)
  std::optional<double> integral;                 // empty when diverged
  std::vector<double> decade_increments;
  SeriesDiagnostics series;
  DiniClass classification = DiniClass::inconclusive;
};

// log-spaced grid from 10^-decades up to 1
std::vector<double> dini_default_grid(int decades = 24, int per_decade = 10);

DiniReport dini_report(const DensityProfile& profile, const std::vector<double>& t_grid);

}  // namespace cusplab
