#pragma once

#include <map>
#include <string>
#include <vector>

#include "wsnsim/field.hpp"
#include "wsnsim/node.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

class Xoshiro256PlusPlus;

// The comparison set. `leach_modified` keeps the plain LEACH election and
// replaces the join rule: a member may only join a head that is strictly
// closer to the base station than the member itself, and falls back to a
// direct uplink when no such head exists.
enum class ProtocolKind {
  direct,
  leach,
  leach_energy,
  leach_boost,
  leach_c,
  leach_modified,
  mesh_greedy,
  mesh_flood,
};

// Exact strings accepted by config files and CLI flags.
std::string to_string(ProtocolKind kind);
ProtocolKind protocol_from_string(const std::string& name);
const std::vector<ProtocolKind>& all_protocols();

inline bool is_mesh(ProtocolKind kind) {
  return kind == ProtocolKind::mesh_greedy || kind == ProtocolKind::mesh_flood;
}
inline bool is_leach_election(ProtocolKind kind) {
  return kind == ProtocolKind::leach || kind == ProtocolKind::leach_energy ||
         kind == ProtocolKind::leach_boost || kind == ProtocolKind::leach_modified;
}

struct LeachConfig {
  double p = 0.05;          // desired head fraction per round, in (0,1)
  int boost_rounds = 40;    // leach_boost: rounds without headship before boost
  double boost_factor = 2.0;

  int epoch() const;        // round(1/p), >= 1

  friend bool operator==(const LeachConfig&, const LeachConfig&) = default;
};

// Terminates a mesh route that reaches the base station.
inline constexpr int kBsSentinel = -1;

// One round's topology. Cluster protocols partition the alive nodes into
// heads / members / direct senders; mesh protocols instead carry one route
// per alive source (greedy: the relay chain walked; flood: the
// retransmission order), ending in kBsSentinel when the packet reaches the
// base station.
struct RoundPlan {
  ProtocolKind kind = ProtocolKind::direct;
  std::vector<int> heads;              // sorted
  std::map<int, int> membership;       // member id -> head id
  std::vector<int> direct;             // sorted
  std::map<int, std::vector<int>> routes;  // source id -> path (mesh only)
};

// Election probability for one alive node under leach / leach_energy /
// leach_boost. Standard rotation threshold p/(1 - p*(round mod epoch)) with
// the epoch-eligibility rule; the energy variant scales it by
// residual/initial, the boost variant multiplies by boost_factor once the
// node has gone boost_rounds rounds without serving. Clamped to [0,1].
double leach_threshold(const NodeState& node, int round, const LeachConfig& cfg,
                       ProtocolKind variant, double initial_energy);

// Every alive node draws u in [0,1) in id order and becomes head iff
// u < leach_threshold. Updates the per-node epoch counters.
std::vector<int> elect_heads_leach(std::vector<NodeState>& states, int round,
                                   const LeachConfig& cfg, ProtocolKind variant,
                                   double initial_energy, Xoshiro256PlusPlus& rng);

// Centralized election: only nodes at or above the average residual energy
// of the alive population are eligible; picks min(k, #eligible) heads
// minimizing the total squared member-to-nearest-head distance.
// Deterministic, no rng.
std::vector<int> elect_heads_leach_c(const std::vector<NodeState>& states,
                                     const Field& field, int k);

// Plain LEACH join: nearest head by Euclidean distance, ties to the lowest
// head id. Throws if `heads` is empty (the caller routes members directly).
std::map<int, int> assign_nearest(const std::vector<int>& members,
                                  const std::vector<int>& heads, const Field& field);

struct ModifiedAssignment {
  std::map<int, int> membership;
  std::vector<int> direct;
};

// The modified join rule: member m considers only heads strictly closer to
// the base station than m itself, joins the nearest of those (ties to the
// lowest id), and uplinks directly when no head qualifies.
ModifiedAssignment assign_modified(const std::vector<int>& members,
                                   const std::vector<int>& heads, const Field& field);

// Mesh relaying over the neighbor graph (all pairs within radio_range).
// greedy: hop to the alive neighbor nearest the base station, each hop
// strictly decreasing base-station distance, until the station itself is in
// radio range; flood: every alive node reachable from the source
// retransmits once (BFS order, duplicates suppressed). A route ends in
// kBsSentinel iff the packet reaches the station; unreachable sources keep
// a sentinel-free route and count as undelivered.
std::map<int, std::vector<int>> build_mesh_routes(const std::vector<NodeState>& states,
                                                  const Field& field, ProtocolKind mode,
                                                  double radio_range);

RoundPlan build_round_plan(ProtocolKind kind, std::vector<NodeState>& states,
                           const Field& field, int round, const LeachConfig& cfg,
                           double radio_range, double initial_energy,
                           Xoshiro256PlusPlus& rng);

// Checks the RoundPlan structural invariants against the node states;
// throws std::logic_error on violation (a bug signal, not a user error).
void validate_plan(const RoundPlan& plan, const std::vector<NodeState>& states);

}  // namespace wsnsim
