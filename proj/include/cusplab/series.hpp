#pragma once

#include <string>
#include <vector>

namespace cusplab {

enum class SeriesVerdict { convergent, divergent, inconclusive };

const char* to_string(SeriesVerdict v);

struct SeriesDiagnostics {
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  double tail_ratio = 0.0;       // fitted geometric ratio of the tail
  double power_exponent = 0.0;   // fitted p in c / j^p
  double log_slope = 0.0;        // slope of ln(j ln j a_j) against ln j
  int tail_start = 0;            // first index used in the fits
  std::string note;
};

// Heuristic tail test for a positive series a_j, j = first_index, first_index+1, ...
// Needs at least 20 terms. Divergence is tested against c/(j log j) before the
// convergence fits, since that comparison series has local power exponent > 1.
SeriesDiagnostics classify_series(const std::vector<double>& terms,
                                  int first_index);

// ordinary least-squares slope of y on x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cusplab
