#pragma once

#include "sim_engine.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace muagg {

// Frozen configuration keys (see README for the contract). Setters throw
// std::runtime_error naming the offending key on bad values or unknown keys.
std::vector<std::string> config_keys();
void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const SimConfig& cfg, const std::string& key);

// key = value file; '#' starts a comment. Throws std::runtime_error whose
// message contains the path when the file cannot be read.
void load_config_file(SimConfig& cfg, const std::string& path);

// "key=value" as given on the command line.
void apply_override(SimConfig& cfg, const std::string& assignment);

// Resolved configuration echo (both load spellings included).
nlohmann::json config_to_json(const SimConfig& cfg);

/// One parameter sweep: a base configuration, an axis, the axis values, and
/// the number of seeds per point.
struct SweepSpec {
    SimConfig base;
    std::string axis; // offered_load_mbps | n_stations | buffer_capacity | m_antennas | alpha
    std::vector<double> values;
    int replications = 1;

    void validate() const;
};

// Applies one axis value to a config. The alpha axis sets
// buffer_capacity = round(alpha * m_antennas * max_ampdu).
void apply_axis_value(SimConfig& cfg, const std::string& axis, double value);

// Sweep file: base config keys plus axis / values / range / replications.
SweepSpec load_sweep_file(const std::string& path);

std::vector<std::string> preset_names();
std::optional<SimConfig> preset_config(const std::string& name);
std::optional<SweepSpec> preset_sweep(const std::string& name);

} // namespace muagg
