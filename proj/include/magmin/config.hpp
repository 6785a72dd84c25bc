#pragma once

#include <map>
#include <string>
#include <vector>

#include "magmin/sim.hpp"

namespace magmin {

/// Flat dotted-key configuration, e.g. "grid.nx = 100". '#' starts a
/// comment; blank lines are ignored. Later keys override earlier ones.
using ConfigMap = std::map<std::string, std::string>;

[[nodiscard]] ConfigMap parse_config_file(const std::string& path);

/// Applies "key=value" override strings on top of a parsed map.
void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides);

/// Builds a typed run configuration. Unknown keys and malformed values
/// raise ConfigError. Missing keys fall back to the benchmark defaults.
[[nodiscard]] SimulationConfig config_from_map(const ConfigMap& map);

}  // namespace magmin
