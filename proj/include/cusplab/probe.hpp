#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cusplab/fem.hpp"
#include "cusplab/wos.hpp"

namespace cusplab {

enum class PathKind { level_curve, axis_below, ray };
const char* to_string(PathKind k);

struct PathSpec {
  PathKind kind = PathKind::level_curve;
  double level = 1.5;       // level_curve
  double angle = M_PI / 2;  // ray: angle from the +z axis in the meridian half-plane
  double start = 0.25;      // distance scale of the first station
  double factor = 0.5;
  int stations = 10;
  std::string id;
};

struct OracleSource {
  const PotentialField* field = nullptr;
  double A = 0.5, B = 2.0, alpha = 0.5, beta = 2.0;
};
struct FemSource {
  const SolutionField* solution = nullptr;
};
struct WosSource {
  const WosDomain* domain = nullptr;
  WosScore score;
  WosOptions options;
  double eps_fraction = 1e-2;  // eps <= fraction * starting distance
};
using ProbeSource = std::variant<OracleSource, FemSource, WosSource>;

struct ProbeStation {
  double r = 0.0, z = 0.0, log_r = 0.0;
  double value = 0.0, std_error = 0.0;
};

struct ProbePath {
  PathSpec spec;
  std::vector<ProbeStation> stations;
  double limit = 0.0;
  double spread = 0.0;
};

// station geometry only; level-curve radii come from log-space solves
std::vector<ProbeStation> path_stations(const PotentialField& field, const PathSpec& spec);

ProbePath sample_path(const ProbeSource& source, const PotentialField& field,
                      const PathSpec& spec);

enum class LimitClass { regular_like, semiregular_like, strongly_irregular_like };
const char* to_string(LimitClass c);

struct LimitSet {
  double lo = 0.0, hi = 0.0;
  LimitClass classification = LimitClass::regular_like;
};

LimitSet limit_set_estimate(const std::vector<ProbePath>& paths, double datum_at_z0,
                            double tolerance = 0.01);

struct NonlocalityReport {
  std::vector<ProbePath> paths;
  double floor = 0.0;
  std::string verdict;  // non-vanishing, vanishing, inconclusive
  double eps_amplitude = 0.0;
};

// bump on the outer component, zero elsewhere; WoS along level curves
NonlocalityReport nonlocality_experiment(const CrossSection& cs, const BumpDatum& bump,
                                         const std::vector<double>& levels,
                                         const std::vector<double>& station_z,
                                         const WosOptions& opt, int tail = 3);

}  // namespace cusplab
