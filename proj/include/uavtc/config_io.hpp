#pragma once

#include <filesystem>

#include <json.hpp>

#include "uavtc/model.hpp"

namespace uavtc {

// Flat JSON scenario file. Unknown keys, wrong types and non-integer k are
// reported as ConfigError. The threshold is given as `threshold_db`, or as a
// linear `threshold` (which is what to_json writes, so round-trips are exact).
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioConfig& config);

} // namespace uavtc
