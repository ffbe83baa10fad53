#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "edgechain/netsim/config.hpp"

namespace edgechain::cli {

/// Strict reader: unknown keys and wrong types raise ledger::FormatError.
/// Every key other than "nodes" is optional and takes the default listed
/// by scenario_help().
netsim::SimConfig scenario_from_json(const nlohmann::json& j);

/// Fully resolved form; reading it back yields the same config.
nlohmann::json scenario_to_json(const netsim::SimConfig& config);

/// File-format reference with defaults, for --help.
std::string scenario_help();

struct BuiltinScenario {
  std::string name;
  std::string description;
  netsim::SimConfig config;
};

const std::vector<BuiltinScenario>& builtin_scenarios();
std::optional<netsim::SimConfig> find_builtin(std::string_view name);

}  // namespace edgechain::cli
