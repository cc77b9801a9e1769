#pragma once

#include <functional>
#include <vector>

namespace cusplab {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Globally adaptive 7/15-point Gauss-Kronrod over [a,b] with optional interior
// breakpoints. Non-convergence is reported, not thrown.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opt = {},
                           const std::vector<double>& breakpoints = {});

}  // namespace cusplab
