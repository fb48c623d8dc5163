// Command line front end: `simulate` runs a protocol/seed sweep and writes
// CSV + JSON artifacts, `compare` rebuilds the comparison table from a
// result directory. All simulation behavior lives in the core library.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnsim/config.hpp"
#include "wsnsim/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cluster-based data collection simulator for wireless sensor networks"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "run every (protocol, seed) pair");
  std::string config_path;
  std::vector<std::string> protocol_flags;
  std::string seed_spec;
  std::string out_dir;
  std::vector<std::string> sets;
  simulate->add_option("--config", config_path, "JSON config file (defaults when omitted)");
  simulate->add_option("--protocol", protocol_flags,
                       "protocol to run (repeatable, overrides the config list)");
  simulate->add_option("--seeds", seed_spec, "seed list, e.g. 0..19 or 0,1,5");
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--set", sets, "key=value override (repeatable, wins over the file)");

  auto* compare = app.add_subcommand("compare", "aggregate *_summary.json files");
  std::string in_dir;
  compare->add_option("--in", in_dir, "directory with summary files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      wsnsim::ScenarioConfig cfg = config_path.empty()
                                       ? wsnsim::ScenarioConfig{}
                                       : wsnsim::parse_config_file(config_path);
      for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw wsnsim::ConfigError("--set", "expected key=value, got " + kv);
        wsnsim::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (!protocol_flags.empty()) {
        cfg.protocols.clear();
        for (const auto& name : protocol_flags)
          cfg.protocols.push_back(wsnsim::protocol_from_string(name));
      }
      if (!seed_spec.empty()) cfg.seeds = wsnsim::parse_seed_spec(seed_spec);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      wsnsim::validate_config(cfg);
      return wsnsim::run_experiment(cfg);
    }

    const wsnsim::ComparisonTable table = wsnsim::compare_directory(in_dir);
    const std::string csv = wsnsim::comparison_to_csv(table);
    std::cout << csv;
    return 0;
  } catch (const wsnsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
