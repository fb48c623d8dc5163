#include "wsnsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

struct RoundAccounting {
  double charged = 0.0;
  std::vector<int> deaths;

  // A node performs an action only if it can pay for it in full; otherwise
  // it dies on the spot and its leftover charge is forfeited (the forfeit
  // still counts as drained energy, keeping conservation exact).
  bool charge(NodeState& s, double cost) {
    if (!s.alive) return false;
    if (s.residual >= cost) {
      s.residual -= cost;
      charged += cost;
      return true;
    }
    charged += s.residual;
    s.residual = 0.0;
    s.alive = false;
    deaths.push_back(s.id);
    return false;
  }
};

// Setup-phase control traffic (off by default): head advertisements are
// broadcast across the whole field, every other alive node hears each one,
// members answer with a join message to their head.
void charge_control_phase(std::vector<NodeState>& states, const RoundPlan& plan,
                          const RadioParams& params, const Field& field,
                          RoundAccounting& acct) {
  if (plan.heads.empty()) return;
  const double broadcast_d = std::hypot(field.width, field.height);

  for (int h : plan.heads)
    acct.charge(states[h], tx_cost(params.ctrl_bits, broadcast_d, params));
  for (auto& s : states) {
    if (!s.alive) continue;
    if (std::binary_search(plan.heads.begin(), plan.heads.end(), s.id)) continue;
    for (std::size_t i = 0; i < plan.heads.size() && s.alive; ++i)
      acct.charge(s, rx_cost(params.ctrl_bits, params));
  }
  for (const auto& [m, h] : plan.membership) {
    const double d = distance(field.nodes[m], field.nodes[h]);
    if (acct.charge(states[m], tx_cost(params.ctrl_bits, d, params)))
      acct.charge(states[h], rx_cost(params.ctrl_bits, params));
  }
}

void run_cluster_frame(std::vector<NodeState>& states, const RoundPlan& plan,
                       const RadioParams& params, const Field& field,
                       RoundAccounting& acct, std::vector<char>& delivered) {
  // Members transmit to their heads first.
  std::map<int, std::vector<int>> arrived;  // head -> members whose tx went out
  for (const auto& [m, h] : plan.membership) {
    const double d = distance(field.nodes[m], field.nodes[h]);
    if (acct.charge(states[m], tx_cost(params.data_bits, d, params)))
      arrived[h].push_back(m);
  }

  // Heads receive, fuse (their own reading included), and uplink.
  for (int h : plan.heads) {
    std::vector<int> received;
    if (auto it = arrived.find(h); it != arrived.end()) {
      for (int m : it->second) {
        if (!states[h].alive) break;
        if (acct.charge(states[h], rx_cost(params.data_bits, params)))
          received.push_back(m);
      }
    }
    if (!states[h].alive) continue;
    const auto signals = static_cast<std::int64_t>(received.size()) + 1;
    if (!acct.charge(states[h], aggregate_cost(params.data_bits, signals, params)))
      continue;
    if (!acct.charge(states[h],
                     tx_cost(params.data_bits, distance(field.nodes[h], field.bs), params)))
      continue;
    delivered[h] = 1;
    for (int m : received) delivered[m] = 1;
  }

  // Direct senders uplink straight to the base station.
  for (int id : plan.direct) {
    const double d = distance(field.nodes[id], field.bs);
    if (acct.charge(states[id], tx_cost(params.data_bits, d, params)))
      delivered[id] = 1;
  }
}

// Greedy mesh route: unicast hop chain ending in kBsSentinel when the last
// node uplinks. Senders do not know whether the next relay is still alive;
// the transmission is spent either way and the delivery fails.
void run_greedy_route(std::vector<NodeState>& states, const std::vector<int>& path,
                      const RadioParams& params, const Field& field,
                      RoundAccounting& acct, std::vector<char>& delivered) {
  const int source = path.front();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int u = path[i];
    const int v = path[i + 1];
    if (v == kBsSentinel) {
      if (acct.charge(states[u],
                      tx_cost(params.data_bits, distance(field.nodes[u], field.bs), params)))
        delivered[source] = 1;
      return;
    }
    if (!acct.charge(states[u],
                     tx_cost(params.data_bits, distance(field.nodes[u], field.nodes[v]), params)))
      return;  // sender died mid-route
    if (!states[v].alive) return;  // relay gone, packet lost
    if (!acct.charge(states[v], rx_cost(params.data_bits, params))) return;
  }
}

// Flood: replay the planned BFS retransmission order, but only nodes that
// actually heard the packet (given the deaths so far) rebroadcast. Every
// alive geometric neighbor of a broadcaster pays a reception; the base
// station overhears any broadcast made within radio range of it.
void run_flood_route(std::vector<NodeState>& states, const std::vector<int>& path,
                     const RadioParams& params, const Field& field,
                     RoundAccounting& acct, std::vector<char>& delivered,
                     double radio_range,
                     const std::vector<std::vector<int>>& neighbors) {
  const int source = path.front();
  std::vector<char> heard(states.size(), 0);
  heard[source] = 1;
  const double broadcast_cost = tx_cost(params.data_bits, radio_range, params);

  for (int u : path) {
    if (u == kBsSentinel) break;
    if (!states[u].alive || !heard[u]) continue;
    if (!acct.charge(states[u], broadcast_cost)) continue;
    if (distance(field.nodes[u], field.bs) <= radio_range) delivered[source] = 1;
    for (int v : neighbors[u]) {
      if (!states[v].alive) continue;
      if (acct.charge(states[v], rx_cost(params.data_bits, params))) heard[v] = 1;
    }
  }
}

std::vector<std::vector<int>> geometric_neighbors(const Field& field, double radio_range) {
  std::vector<std::vector<int>> adj(field.node_count());
  for (int a = 0; a < field.node_count(); ++a)
    for (int b = a + 1; b < field.node_count(); ++b)
      if (distance(field.nodes[a], field.nodes[b]) <= radio_range) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
  return adj;
}

}  // namespace

Field make_field(const RunSettings& settings, std::uint64_t seed) {
  Field field = settings.grid
                    ? deploy_grid(settings.grid_nx, settings.grid_ny, settings.grid_spacing)
                    : deploy_uniform(settings.nodes, settings.width, settings.height, seed);
  field.bs = settings.bs;
  return field;
}

RoundReport run_round(std::vector<NodeState>& states, const RoundPlan& plan,
                      const RadioParams& params, const Field& field, int round,
                      int frames_per_round, bool control_energy, double radio_range) {
  validate_plan(plan, states);
  if (static_cast<int>(states.size()) != field.node_count())
    throw std::logic_error("run_round: states/field size mismatch");

  RoundAccounting acct;
  std::vector<char> delivered(states.size(), 0);

  const bool mesh = is_mesh(plan.kind);
  std::vector<std::vector<int>> neighbors;
  if (plan.kind == ProtocolKind::mesh_flood)
    neighbors = geometric_neighbors(field, radio_range);

  if (control_energy && !mesh)
    charge_control_phase(states, plan, params, field, acct);

  for (int frame = 0; frame < frames_per_round; ++frame) {
    if (!mesh) {
      run_cluster_frame(states, plan, params, field, acct, delivered);
    } else {
      for (const auto& [source, path] : plan.routes) {
        if (!states[source].alive) continue;  // died earlier this round
        if (plan.kind == ProtocolKind::mesh_greedy)
          run_greedy_route(states, path, params, field, acct, delivered);
        else
          run_flood_route(states, path, params, field, acct, delivered, radio_range,
                          neighbors);
      }
    }
  }

  RoundReport report;
  report.round = round;
  report.energy_charged = acct.charged;
  report.deaths = std::move(acct.deaths);
  report.delivered_sources =
      static_cast<int>(std::count(delivered.begin(), delivered.end(), 1));
  report.heads = static_cast<int>(plan.heads.size());
  report.direct = static_cast<int>(plan.direct.size());
  return report;
}

SimulationResult run_simulation(const RunSettings& settings, ProtocolKind protocol,
                                std::uint64_t seed, const RoundObserver& observer) {
  if (settings.max_rounds < 1)
    throw std::invalid_argument("run_simulation: max_rounds must be >= 1");
  if (settings.frames_per_round < 1)
    throw std::invalid_argument("run_simulation: frames_per_round must be >= 1");
  if (is_mesh(protocol) && !(settings.radio_range > 0.0))
    throw std::invalid_argument("run_simulation: mesh protocols need radio_range > 0");

  const Field field = make_field(settings, seed);

  SimulationResult result;
  result.settings = settings;
  result.protocol = protocol;
  result.seed = seed;

  std::vector<NodeState>& states = result.final_states;
  states.resize(field.nodes.size());
  for (int i = 0; i < field.node_count(); ++i) {
    states[i].id = i;
    states[i].residual = settings.radio.e_init;
  }

  Xoshiro256PlusPlus election_rng(derive_stream_seed(seed, 1));

  for (int round = 0; round < settings.max_rounds; ++round) {
    const bool any_alive =
        std::any_of(states.begin(), states.end(), [](const NodeState& s) { return s.alive; });
    if (!any_alive) break;

    const RoundPlan plan =
        build_round_plan(protocol, states, field, round, settings.leach,
                         settings.radio_range, settings.radio.e_init, election_rng);
    if (observer) observer(round, plan, states);
    result.reports.push_back(run_round(states, plan, settings.radio, field, round,
                                       settings.frames_per_round, settings.control_energy,
                                       settings.radio_range));
  }
  return result;
}

}  // namespace wsnsim
