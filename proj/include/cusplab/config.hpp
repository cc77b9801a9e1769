#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cusplab/fem.hpp"
#include "cusplab/potential.hpp"
#include "cusplab/probe.hpp"

namespace cusplab {

struct DensitySpec {
  std::string kind = "lebesgue";  // lebesgue | power | tabulated
  double p = 1.0;
  double L = 1.0;
  std::vector<std::pair<double, double>> samples;

  DensityProfile build() const;
};

struct GridSpec {
  double lo = 0.0, hi = 1.0;
  int count = 2;
};

struct RunConfig {
  std::string subcommand;
  DensitySpec density;
  double A = 0.5, B = 2.0;

  int n_levels = 16, n_stations = 64;
  double r_min = 1e-4;

  // data per component: number or {"bump": {...}} or {"tabulated": [...]}
  nlohmann::json data_outer, data_inner, data_cap;

  std::vector<double> contour_levels{0.5, 2.0};
  int contour_n = 64;
  std::string grading = "geometric";

  GridSpec grid_r{0.0, 3.0, 61}, grid_z{-1.0, 3.0, 81};

  std::string probe_source = "oracle";  // oracle | fem | wos
  std::vector<PathSpec> paths;
  bool nonlocality = false;
  std::vector<double> nonlocality_levels{1.5};
  std::vector<double> nonlocality_z{0.32, 0.16, 0.08, 0.04, 0.02};
  BumpDatum nonlocality_bump{-1.0, -1.0, 1.0};  // negative s0/w: centred on the outer curve

  std::vector<Point> wos_points;
  int walks = 100000;
  double eps = 1e-4;
  int step_cap = 100000;

  std::vector<std::string> wiener_profiles{"exp-log-squared", "log-power", "cubic", "lebesgue-r2"};
  std::string wiener_input;
  std::vector<double> wiener_q{0.3, 0.5, 0.7};

  std::string output_dir;
  std::uint64_t seed = 20240601;
  double quad_tol = 1e-10;
  double cg_tol = 1e-10;

  // full echo including defaults; from_json(to_json()) reproduces the config
  nlohmann::json to_json() const;
  // validates every key; InputError carries a JSON pointer to the offending key
  static RunConfig from_json(const nlohmann::json& j);

  BoundaryData boundary_data() const;
};

const std::vector<std::string>& subcommands();

}  // namespace cusplab
