#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wsnsim/energy.hpp"
#include "wsnsim/field.hpp"
#include "wsnsim/node.hpp"
#include "wsnsim/protocols.hpp"

namespace wsnsim {

// Everything one simulation run depends on. Produced from the user-facing
// scenario config with every default resolved, so that two runs with equal
// RunSettings and equal (protocol, seed) are bit-identical.
struct RunSettings {
  int nodes = 100;
  double width = 100.0;
  double height = 100.0;
  bool grid = false;
  int grid_nx = 0;
  int grid_ny = 0;
  double grid_spacing = 0.0;
  Position bs{50.0, 125.0};
  RadioParams radio;
  LeachConfig leach;
  int frames_per_round = 1;
  int max_rounds = 5000;
  bool control_energy = false;
  double radio_range = 30.0;

  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct RoundReport {
  int round = 0;
  double energy_charged = 0.0;  // every joule drained this round, forfeits included
  std::vector<int> deaths;      // in order of death
  int delivered_sources = 0;    // distinct sources whose report reached the BS
  int heads = 0;
  int direct = 0;
};

struct SimulationResult {
  RunSettings settings;
  ProtocolKind protocol = ProtocolKind::leach;
  std::uint64_t seed = 0;
  std::vector<RoundReport> reports;
  std::vector<NodeState> final_states;
};

// Called before each round is charged, with the freshly built plan and the
// round-start states. Used by tests and invariant checks.
using RoundObserver =
    std::function<void(int round, const RoundPlan&, const std::vector<NodeState>&)>;

// Deterministic node deployment for a run (the base station comes from the
// settings, not from the deploy default).
Field make_field(const RunSettings& settings, std::uint64_t seed);

// Charges one round of the plan against the states, in deterministic order:
// members by id, then heads by id, then direct senders by id, then mesh
// routes in source order. A node that cannot afford an action dies before
// performing it; deliveries that depended on it fail.
RoundReport run_round(std::vector<NodeState>& states, const RoundPlan& plan,
                      const RadioParams& params, const Field& field, int round,
                      int frames_per_round, bool control_energy, double radio_range);

SimulationResult run_simulation(const RunSettings& settings, ProtocolKind protocol,
                                std::uint64_t seed, const RoundObserver& observer = {});

}  // namespace wsnsim
