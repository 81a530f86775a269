#pragma once

#include <cstdint>
#include <string>

#include "detc/scenario.hpp"

namespace detc {

/// Serializes the numeric configuration to the canonical JSON document
/// (sorted keys, round-trip number formatting). Keys: scenario.name,
/// sim.dt, sim.horizon, c, varpi1, varpi2, sigma, gamma, thresholds.dx,
/// thresholds.du, init.x, init.theta_hat.
std::string config_to_json(const ScenarioConfig& cfg);

/// Loads a configuration file. The file's scenario.name (or the non-empty
/// override) selects the built-in plant whose defaults seed every field;
/// numeric keys present in the file replace those defaults. Unknown keys
/// are rejected. Throws ParseError / IoError / SpecError.
Scenario load_scenario_file(const std::string& path, const std::string& scenario_override = "");

/// Parses configuration overrides from a JSON string (same schema).
Scenario load_scenario_json(const std::string& json_text, const std::string& scenario_override = "");

void save_scenario_config(const Scenario& scenario, const std::string& path);

/// FNV-1a hash of the canonical JSON document; identifies a run setup.
std::uint64_t config_fingerprint(const ScenarioConfig& cfg);

}  // namespace detc
