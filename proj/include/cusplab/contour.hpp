#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "cusplab/potential.hpp"

namespace cusplab {

struct SearchOptions {
  double search_radius = 1e6;
  // lower limit of the log-radius bracket; log(1e-300) keeps r representable
  double min_log_radius = -690.7755278982137;
  double rel_tol = 1e-10;
};

struct AxisCrossings {
  double z1 = 0.0;
  double z2 = 0.0;
};

AxisCrossings axis_crossings(const PotentialField& field, double c,
                             double search_radius = 1e6);

// log r_c(z) by bisection in t = log r. RangeError when the bracket leaves
// [min_log_radius, log(search_radius)].
double log_radius_at(const PotentialField& field, double c, double z,
                     const SearchOptions& opt = {});
double radius_at(const PotentialField& field, double c, double z,
                 const SearchOptions& opt = {});

struct ContourSample {
  double z = 0.0;
  double r = 0.0;
  double log_r = 0.0;
  double residual = 0.0;  // |V(r,z) - c|; 0 for the axis endpoints
};

enum class Grading { uniform, geometric };

struct ContourCurve {
  double level = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  std::vector<ContourSample> samples;  // includes both endpoints with r = 0

  double max_residual() const;
  std::vector<Point> points() const;
};

// interior stations only, in the given order
std::vector<ContourSample> sample_contour(const PotentialField& field, double c,
                                          const std::vector<double>& zs,
                                          const SearchOptions& opt = {});

ContourCurve trace_contour(const PotentialField& field, double c, int n,
                           Grading grading = Grading::geometric, double ratio = 0.7,
                           const SearchOptions& opt = {});

enum class RateVariant { dini, monotone };

struct CuspRateRow {
  double z = 0.0;
  double log_r = 0.0;      // log r_c(z)
  double log_lower = 0.0;  // -beta / rho(.)
  double log_upper = 0.0;  // -alpha / rho(.)
  bool pass = false;
  double trend = 0.0;      // V(exp(-alpha / rho(z)), z)
};

struct CuspRateReport {
  double level = 0.0, alpha = 0.0, beta = 0.0, delta = 0.0;
  RateVariant variant = RateVariant::dini;
  double trend_target = 0.0;  // V(0,0) + 2 alpha
  std::vector<CuspRateRow> rows;
  bool all_pass = false;
};

std::vector<double> default_rate_grid();

CuspRateReport cusp_rate_bounds(const PotentialField& field, double c, double alpha,
                                double beta, double delta, const std::vector<double>& z_grid,
                                RateVariant variant = RateVariant::dini);

}  // namespace cusplab

namespace cusplab {

// bisection root of a function that changes sign on [lo, hi]
double bisect_root(const std::function<double(double)>& f, double lo, double hi);

// Newton iteration along grad V onto the level set V = c
Point project_to_level(const PotentialField& field, double c, Point p);

}  // namespace cusplab
