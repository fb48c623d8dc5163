#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/metrics.hpp"

namespace wsnsim {

// Optional per-run observer hook; each returned observer is only ever
// invoked from the thread running that (protocol, seed) pair.
using ObserverFactory = std::function<RoundObserver(ProtocolKind, std::uint64_t seed)>;

// Runs every (protocol, seed) pair, possibly on a bounded worker pool
// (WSNSIM_WORKERS env var; defaults to the hardware thread count). Results
// come back in job order — protocols outer, seeds inner — independent of
// the worker count.
std::vector<SimulationResult> run_protocol_sweep(const RunSettings& settings,
                                                 const std::vector<ProtocolKind>& protocols,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const ObserverFactory& observers = {});

// Fixed round CSV schema:
//   round,alive,heads,direct,delivered,energy_charged_j,total_residual_j
// one row per simulated round, floats printed with 9 significant digits.
void write_round_csv(std::ostream& out, const SimulationResult& result);

nlohmann::json settings_to_json(const RunSettings& settings);

// Per-protocol summary document: settings snapshot plus one lifetime
// summary per seed.
nlohmann::json summary_to_json(ProtocolKind protocol, const RunSettings& settings,
                               const std::vector<SimulationResult>& runs);

// Full experiment: round CSV per run, summary JSON per protocol, and
// comparison.csv when at least two protocols ran; prints a one-screen
// summary. Returns a process exit status (nonzero on I/O failure).
int run_experiment(const ScenarioConfig& cfg);

// Rebuilds the comparison table from the *_summary.json files in a
// directory (the `compare` subcommand).
ComparisonTable compare_directory(const std::string& dir);

}  // namespace wsnsim
