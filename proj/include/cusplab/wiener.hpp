#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cusplab/contour.hpp"
#include "cusplab/series.hpp"

namespace cusplab {

// contour profile as log r in terms of log z, valid for 0 < z <= z_max
struct WienerProfile {
  std::string name;
  std::function<double(double)> log_r;
  double z_max = 0.5;
  double z_min = 0.0;
};

WienerProfile profile_exp_log_squared();    // r = z^(-log z)
WienerProfile profile_log_power();          // r = (-log z)^(log z)
WienerProfile profile_power(double k);      // r = z^k
// r_c of a potential field, solved in log space
WienerProfile profile_from_field(const PotentialField& field, double c, std::string name);
// piecewise linear in (log z, log r) through the interior samples
WienerProfile profile_from_curve(const ContourCurve& curve, std::string name);

enum class WienerClass { singular, regular, inconclusive };
const char* to_string(WienerClass c);

struct WienerReport {
  std::string profile;
  double q = 0.5;
  int j0 = 1, j_max = 1;
  std::vector<double> terms;
  std::vector<double> partial_sums;
  SeriesDiagnostics diagnostics;
  WienerClass classification = WienerClass::inconclusive;
};

// smallest j >= 1 with q^j <= z_max
int default_start_index(const WienerProfile& profile, double q);
// largest j with q^j >= z_min (or j0 + 199 when z_min = 0)
int default_end_index(const WienerProfile& profile, double q, int j0);

// terms 1/|log r(q^j)|; DomainError where r >= 1
WienerReport log_series(const WienerProfile& profile, double q, int j0, int j_max);
WienerReport log_series(const WienerProfile& profile, double q);

WienerClass classify(const std::vector<double>& terms, int j0);
WienerReport& classify(WienerReport& report);

}  // namespace cusplab
