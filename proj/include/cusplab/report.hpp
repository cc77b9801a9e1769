#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace cusplab {

inline constexpr const char* kVersion = "1.0.0";

struct Check {
  Check(std::string n, bool p, nlohmann::json d = nlohmann::json::object())
      : name(std::move(n)), pass(p), detail(std::move(d)) {}
  std::string name;
  bool pass = false;
  nlohmann::json detail;
};

struct ModuleReport {
  explicit ModuleReport(std::string m, nlohmann::json d = nlohmann::json::object())
      : module(std::move(m)), data(std::move(d)) {}
  std::string module;
  nlohmann::json data;
  std::vector<Check> checks;
};

// Single summary with sorted keys, embedding versions, seeds and tolerances.
// InputError on an empty bundle.
nlohmann::json report(const std::vector<ModuleReport>& bundle,
                      const nlohmann::json& provenance = nlohmann::json::object());

}  // namespace cusplab
