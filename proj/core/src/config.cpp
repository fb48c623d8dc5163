#include "wsnsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wsnsim {

namespace {

double require_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

int require_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<int>();
}

bool require_bool(const nlohmann::json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

std::string require_string(const nlohmann::json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

std::vector<ProtocolKind> parse_protocol_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "expected an array of protocol names");
  std::vector<ProtocolKind> kinds;
  for (const auto& item : v) {
    try {
      kinds.push_back(protocol_from_string(require_string(item, key)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
  }
  return kinds;
}

std::vector<std::uint64_t> parse_seed_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "expected an array of seeds");
  std::vector<std::uint64_t> seeds;
  for (const auto& item : v) {
    if (!item.is_number_integer() || (item.is_number_integer() && item.get<std::int64_t>() < 0))
      throw ConfigError(key, "seeds must be non-negative integers");
    seeds.push_back(item.get<std::uint64_t>());
  }
  return seeds;
}

double parse_double_value(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "not a number: " + value);
  }
  if (used != value.size()) throw ConfigError(key, "not a number: " + value);
  return out;
}

int parse_int_value(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "not an integer: " + value);
  }
  if (used != value.size()) throw ConfigError(key, "not an integer: " + value);
  return static_cast<int>(out);
}

bool parse_bool_value(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key, "expected true/false: " + value);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

// Accepts "a..b" (inclusive) and comma-separated values; used by both the
// --seeds flag and `--set seeds=...`.
std::vector<std::uint64_t> parse_seed_spec(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(spec, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const auto lo = parse_int_value(part.substr(0, dots), "seeds");
      const auto hi = parse_int_value(part.substr(dots + 2), "seeds");
      if (lo < 0 || hi < lo) throw ConfigError("seeds", "bad range: " + part);
      for (int s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    } else {
      const int s = parse_int_value(part, "seeds");
      if (s < 0) throw ConfigError("seeds", "seeds must be non-negative");
      seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  return seeds;
}

ScenarioConfig parse_config_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config", "top level must be a JSON object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "nodes") cfg.nodes = require_int(value, key);
    else if (key == "width") cfg.width = require_number(value, key);
    else if (key == "height") cfg.height = require_number(value, key);
    else if (key == "grid_nx") cfg.grid_nx = require_int(value, key);
    else if (key == "grid_ny") cfg.grid_ny = require_int(value, key);
    else if (key == "grid_spacing") cfg.grid_spacing = require_number(value, key);
    else if (key == "bs_x") cfg.bs_x = require_number(value, key);
    else if (key == "bs_y") cfg.bs_y = require_number(value, key);
    else if (key == "e_elec") cfg.radio.e_elec = require_number(value, key);
    else if (key == "eps_fs") cfg.radio.eps_fs = require_number(value, key);
    else if (key == "eps_mp") cfg.radio.eps_mp = require_number(value, key);
    else if (key == "e_da") cfg.radio.e_da = require_number(value, key);
    else if (key == "data_bits") cfg.radio.data_bits = require_int(value, key);
    else if (key == "ctrl_bits") cfg.radio.ctrl_bits = require_int(value, key);
    else if (key == "e_init") cfg.radio.e_init = require_number(value, key);
    else if (key == "protocols") cfg.protocols = parse_protocol_list(value, key);
    else if (key == "p") cfg.p = require_number(value, key);
    else if (key == "boost_rounds") cfg.boost_rounds = require_int(value, key);
    else if (key == "boost_factor") cfg.boost_factor = require_number(value, key);
    else if (key == "frames_per_round") cfg.frames_per_round = require_int(value, key);
    else if (key == "max_rounds") cfg.max_rounds = require_int(value, key);
    else if (key == "seeds") cfg.seeds = parse_seed_list(value, key);
    else if (key == "control_energy") cfg.control_energy = require_bool(value, key);
    else if (key == "radio_range") cfg.radio_range = require_number(value, key);
    else if (key == "out_dir") cfg.out_dir = require_string(value, key);
    else throw ConfigError(key, "unknown key");
  }
  validate_config(cfg);
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", std::string("parse error in ") + path + ": " + e.what());
  }
  return parse_config_json(j);
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "nodes") cfg.nodes = parse_int_value(value, key);
  else if (key == "width") cfg.width = parse_double_value(value, key);
  else if (key == "height") cfg.height = parse_double_value(value, key);
  else if (key == "grid_nx") cfg.grid_nx = parse_int_value(value, key);
  else if (key == "grid_ny") cfg.grid_ny = parse_int_value(value, key);
  else if (key == "grid_spacing") cfg.grid_spacing = parse_double_value(value, key);
  else if (key == "bs_x") cfg.bs_x = parse_double_value(value, key);
  else if (key == "bs_y") cfg.bs_y = parse_double_value(value, key);
  else if (key == "e_elec") cfg.radio.e_elec = parse_double_value(value, key);
  else if (key == "eps_fs") cfg.radio.eps_fs = parse_double_value(value, key);
  else if (key == "eps_mp") cfg.radio.eps_mp = parse_double_value(value, key);
  else if (key == "e_da") cfg.radio.e_da = parse_double_value(value, key);
  else if (key == "data_bits") cfg.radio.data_bits = parse_int_value(value, key);
  else if (key == "ctrl_bits") cfg.radio.ctrl_bits = parse_int_value(value, key);
  else if (key == "e_init") cfg.radio.e_init = parse_double_value(value, key);
  else if (key == "p") cfg.p = parse_double_value(value, key);
  else if (key == "boost_rounds") cfg.boost_rounds = parse_int_value(value, key);
  else if (key == "boost_factor") cfg.boost_factor = parse_double_value(value, key);
  else if (key == "frames_per_round") cfg.frames_per_round = parse_int_value(value, key);
  else if (key == "max_rounds") cfg.max_rounds = parse_int_value(value, key);
  else if (key == "control_energy") cfg.control_energy = parse_bool_value(value, key);
  else if (key == "radio_range") cfg.radio_range = parse_double_value(value, key);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "seeds") cfg.seeds = parse_seed_spec(value);
  else if (key == "protocols") {
    cfg.protocols.clear();
    for (const auto& name : split(value, ',')) {
      try {
        cfg.protocols.push_back(protocol_from_string(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    }
  } else {
    throw ConfigError(key, "unknown key");
  }
}

nlohmann::json config_to_json(const ScenarioConfig& cfg) {
  nlohmann::json j{
      {"nodes", cfg.nodes},
      {"width", cfg.width},
      {"height", cfg.height},
      {"e_elec", cfg.radio.e_elec},
      {"eps_fs", cfg.radio.eps_fs},
      {"eps_mp", cfg.radio.eps_mp},
      {"e_da", cfg.radio.e_da},
      {"data_bits", cfg.radio.data_bits},
      {"ctrl_bits", cfg.radio.ctrl_bits},
      {"e_init", cfg.radio.e_init},
      {"p", cfg.p},
      {"boost_factor", cfg.boost_factor},
      {"frames_per_round", cfg.frames_per_round},
      {"max_rounds", cfg.max_rounds},
      {"seeds", cfg.seeds},
      {"control_energy", cfg.control_energy},
      {"out_dir", cfg.out_dir},
  };
  if (cfg.uses_grid()) {
    j["grid_nx"] = cfg.grid_nx;
    j["grid_ny"] = cfg.grid_ny;
    j["grid_spacing"] = cfg.grid_spacing;
  }
  if (cfg.bs_x) j["bs_x"] = *cfg.bs_x;
  if (cfg.bs_y) j["bs_y"] = *cfg.bs_y;
  if (cfg.boost_rounds) j["boost_rounds"] = *cfg.boost_rounds;
  if (cfg.radio_range) j["radio_range"] = *cfg.radio_range;
  nlohmann::json protocols = nlohmann::json::array();
  for (ProtocolKind kind : cfg.protocols) protocols.push_back(to_string(kind));
  j["protocols"] = protocols;
  return j;
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.uses_grid()) {
    if (cfg.grid_nx < 1) throw ConfigError("grid_nx", "must be >= 1");
    if (cfg.grid_ny < 1) throw ConfigError("grid_ny", "must be >= 1");
    if (!(cfg.grid_spacing > 0.0)) throw ConfigError("grid_spacing", "must be > 0");
  } else {
    if (cfg.nodes < 1) throw ConfigError("nodes", "must be >= 1");
    if (!(cfg.width > 0.0)) throw ConfigError("width", "must be > 0");
    if (!(cfg.height > 0.0)) throw ConfigError("height", "must be > 0");
  }
  if (!(cfg.radio.e_elec > 0.0)) throw ConfigError("e_elec", "must be > 0");
  if (!(cfg.radio.eps_fs > 0.0)) throw ConfigError("eps_fs", "must be > 0");
  if (!(cfg.radio.eps_mp > 0.0)) throw ConfigError("eps_mp", "must be > 0");
  if (!(cfg.radio.e_da > 0.0)) throw ConfigError("e_da", "must be > 0");
  if (cfg.radio.data_bits < 1) throw ConfigError("data_bits", "must be >= 1");
  if (cfg.radio.ctrl_bits < 1) throw ConfigError("ctrl_bits", "must be >= 1");
  if (!(cfg.radio.e_init > 0.0)) throw ConfigError("e_init", "must be > 0");
  if (!(cfg.p > 0.0 && cfg.p < 1.0)) throw ConfigError("p", "must be in (0,1)");
  if (cfg.boost_rounds && *cfg.boost_rounds < 1)
    throw ConfigError("boost_rounds", "must be >= 1");
  if (!(cfg.boost_factor >= 1.0)) throw ConfigError("boost_factor", "must be >= 1");
  if (cfg.frames_per_round < 1) throw ConfigError("frames_per_round", "must be >= 1");
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds", "must be >= 1");
  if (cfg.seeds.empty()) throw ConfigError("seeds", "must not be empty");
  if (cfg.protocols.empty()) throw ConfigError("protocols", "must not be empty");
  if (cfg.radio_range && !(*cfg.radio_range > 0.0))
    throw ConfigError("radio_range", "must be > 0");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir", "must not be empty");
}

RunSettings resolve_settings(const ScenarioConfig& cfg) {
  validate_config(cfg);
  RunSettings s;
  s.grid = cfg.uses_grid();
  if (s.grid) {
    s.grid_nx = cfg.grid_nx;
    s.grid_ny = cfg.grid_ny;
    s.grid_spacing = cfg.grid_spacing;
    s.nodes = cfg.grid_nx * cfg.grid_ny;
    s.width = (cfg.grid_nx - 1) * cfg.grid_spacing;
    s.height = (cfg.grid_ny - 1) * cfg.grid_spacing;
  } else {
    s.nodes = cfg.nodes;
    s.width = cfg.width;
    s.height = cfg.height;
  }
  s.bs.x = cfg.bs_x.value_or(s.width / 2.0);
  s.bs.y = cfg.bs_y.value_or(s.height * 1.25);
  s.radio = cfg.radio;
  s.leach.p = cfg.p;
  s.leach.boost_factor = cfg.boost_factor;
  s.leach.boost_rounds = cfg.boost_rounds.value_or(2 * s.leach.epoch());
  s.frames_per_round = cfg.frames_per_round;
  s.max_rounds = cfg.max_rounds;
  s.control_energy = cfg.control_energy;
  s.radio_range = cfg.radio_range.value_or(s.grid ? 1.5 * cfg.grid_spacing : 30.0);
  return s;
}

}  // namespace wsnsim
