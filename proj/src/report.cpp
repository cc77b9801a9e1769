#include "cusplab/report.hpp"

#include <Eigen/Core>

#include "cusplab/errors.hpp"

namespace cusplab {

nlohmann::json report(const std::vector<ModuleReport>& bundle, const nlohmann::json& provenance) {
  if (bundle.empty()) throw InputError("report needs at least one module report", "bundle");
  nlohmann::json out;
  out["versions"] = {{"cusplab", kVersion},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  out["provenance"] = provenance;
  bool all = true;
  nlohmann::json modules = nlohmann::json::object();
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& m : bundle) {
    modules[m.module] = m.data;
    for (const auto& c : m.checks) {
      checks.push_back({{"module", m.module}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      all = all && c.pass;
    }
  }
  out["modules"] = modules;
  out["checks"] = checks;
  out["all_pass"] = all;
  return out;
}

}  // namespace cusplab
