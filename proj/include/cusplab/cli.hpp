#pragma once

#include <json.hpp>
#include <ostream>

#include "cusplab/config.hpp"

namespace cusplab {

// Runs one subcommand, writing artifacts plus config.json and report.json into
// the output directory. Returns the report; throws cusplab::Error on failure.
nlohmann::json run_subcommand(const RunConfig& config);

// exit status: 0 success, 1 validation error, 2 numerical failure; error JSON on err
int run(const RunConfig& config, std::ostream& err);
int error_exit(const std::exception& e, std::ostream& err);

}  // namespace cusplab
