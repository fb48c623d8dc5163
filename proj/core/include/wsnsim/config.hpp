#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsnsim/engine.hpp"

namespace wsnsim {

// Raised for anything wrong with user-supplied configuration; the message
// always names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// The experiment description: a flat set of keys, all optional, all with
// documented defaults. Keys map one-to-one onto the JSON config file and
// onto `--set key=value` overrides.
struct ScenarioConfig {
  int nodes = 100;
  double width = 100.0;
  double height = 100.0;
  // A grid deployment replaces the uniform one when all three are set.
  int grid_nx = 0;
  int grid_ny = 0;
  double grid_spacing = 0.0;
  std::optional<double> bs_x;  // default: width/2
  std::optional<double> bs_y;  // default: height*1.25
  RadioParams radio;
  std::vector<ProtocolKind> protocols = {
      ProtocolKind::direct,       ProtocolKind::leach,
      ProtocolKind::leach_c,      ProtocolKind::leach_modified,
      ProtocolKind::mesh_flood,
  };
  double p = 0.05;
  std::optional<int> boost_rounds;     // default: 2 * epoch
  double boost_factor = 2.0;
  int frames_per_round = 1;
  int max_rounds = 5000;
  std::vector<std::uint64_t> seeds;    // default: 0..19
  bool control_energy = false;
  std::optional<double> radio_range;   // default: 30, or 1.5*spacing on grids
  std::string out_dir = "out";

  ScenarioConfig() {
    for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);
  }

  bool uses_grid() const { return grid_nx > 0 || grid_ny > 0 || grid_spacing > 0.0; }
};

// Parse + validate. Unknown keys and out-of-range values raise ConfigError
// naming the key. An empty JSON object yields all defaults.
ScenarioConfig parse_config_json(const nlohmann::json& j);
ScenarioConfig parse_config_file(const std::string& path);

// One `--set key=value` override (flags win over the file). Also accepts
// the list-valued keys `protocols` (comma separated) and `seeds`
// (comma separated or a..b ranges).
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// "0..19", "3", "0,2,7..9" -> explicit seed list.
std::vector<std::uint64_t> parse_seed_spec(const std::string& spec);

// Every key, defaults filled; parse(serialize(cfg)) == cfg.
nlohmann::json config_to_json(const ScenarioConfig& cfg);

// Validation shared by the parser and the CLI (so that overrides are also
// range-checked). Throws ConfigError.
void validate_config(const ScenarioConfig& cfg);

// Resolved per-run settings: grid/uniform choice, default base station,
// default radio range and boost window filled in.
RunSettings resolve_settings(const ScenarioConfig& cfg);

}  // namespace wsnsim
