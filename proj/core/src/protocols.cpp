#include "wsnsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<int> alive_ids(const std::vector<NodeState>& states) {
  std::vector<int> ids;
  ids.reserve(states.size());
  for (const auto& s : states)
    if (s.alive) ids.push_back(s.id);
  return ids;
}

}  // namespace

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::direct: return "direct";
    case ProtocolKind::leach: return "leach";
    case ProtocolKind::leach_energy: return "leach_energy";
    case ProtocolKind::leach_boost: return "leach_boost";
    case ProtocolKind::leach_c: return "leach_c";
    case ProtocolKind::leach_modified: return "leach_modified";
    case ProtocolKind::mesh_greedy: return "mesh_greedy";
    case ProtocolKind::mesh_flood: return "mesh_flood";
  }
  throw std::logic_error("to_string: unknown ProtocolKind");
}

const std::vector<ProtocolKind>& all_protocols() {
  static const std::vector<ProtocolKind> kinds = {
      ProtocolKind::direct,      ProtocolKind::leach,
      ProtocolKind::leach_energy, ProtocolKind::leach_boost,
      ProtocolKind::leach_c,     ProtocolKind::leach_modified,
      ProtocolKind::mesh_greedy, ProtocolKind::mesh_flood,
  };
  return kinds;
}

ProtocolKind protocol_from_string(const std::string& name) {
  for (ProtocolKind kind : all_protocols())
    if (to_string(kind) == name) return kind;
  throw std::invalid_argument("unknown protocol: " + name);
}

int LeachConfig::epoch() const {
  return std::max(1, static_cast<int>(std::lround(1.0 / p)));
}

double leach_threshold(const NodeState& node, int round, const LeachConfig& cfg,
                       ProtocolKind variant, double initial_energy) {
  if (!node.alive) throw std::invalid_argument("leach_threshold: dead node");
  if (node.served_head_in_epoch) return 0.0;

  const int epoch = cfg.epoch();
  const double denom = 1.0 - cfg.p * static_cast<double>(round % epoch);
  double t = denom > 0.0 ? cfg.p / denom : 1.0;

  if (variant == ProtocolKind::leach_energy)
    t *= initial_energy > 0.0 ? node.residual / initial_energy : 0.0;
  if (variant == ProtocolKind::leach_boost && node.rounds_since_head >= cfg.boost_rounds)
    t *= cfg.boost_factor;

  return std::clamp(t, 0.0, 1.0);
}

std::vector<int> elect_heads_leach(std::vector<NodeState>& states, int round,
                                   const LeachConfig& cfg, ProtocolKind variant,
                                   double initial_energy, Xoshiro256PlusPlus& rng) {
  const int epoch = cfg.epoch();
  if (round % epoch == 0)
    for (auto& s : states) s.served_head_in_epoch = false;

  // Every alive node draws, in id order, even when its threshold is zero:
  // the stream position must not depend on eligibility.
  std::vector<int> heads;
  for (auto& s : states) {
    if (!s.alive) continue;
    const double u = rng.next_double();
    if (u < leach_threshold(s, round, cfg, variant, initial_energy))
      heads.push_back(s.id);
  }

  for (auto& s : states) {
    if (!s.alive) continue;
    if (std::binary_search(heads.begin(), heads.end(), s.id)) {
      s.served_head_in_epoch = true;
      s.rounds_since_head = 0;
    } else {
      ++s.rounds_since_head;
    }
  }
  return heads;
}

namespace {

// Cost of a candidate head set: total squared distance from each alive
// non-head to its nearest head.
double head_set_cost(const std::vector<int>& heads, const std::vector<int>& alive,
                     const Field& field) {
  double cost = 0.0;
  for (int v : alive) {
    if (std::find(heads.begin(), heads.end(), v) != heads.end()) continue;
    double best = kInf;
    for (int h : heads) best = std::min(best, squared_distance(field.nodes[v], field.nodes[h]));
    cost += best;
  }
  return cost;
}

// C(n,k) capped at `cap` to avoid overflow.
long long binomial_capped(int n, int k, long long cap) {
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

std::vector<int> leach_c_exhaustive(const std::vector<int>& eligible, int k,
                                    const std::vector<int>& alive, const Field& field) {
  std::vector<int> pick(k);
  std::vector<int> best;
  double best_cost = kInf;
  // Lexicographic enumeration of k-subsets; strict improvement keeps the
  // lexicographically smallest optimum.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int n = static_cast<int>(eligible.size());
  while (true) {
    for (int i = 0; i < k; ++i) pick[i] = eligible[idx[i]];
    const double cost = head_set_cost(pick, alive, field);
    if (cost < best_cost) {
      best_cost = cost;
      best = pick;
    }
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

std::vector<int> leach_c_local_search(const std::vector<int>& eligible, int k,
                                      const std::vector<int>& alive, const Field& field) {
  const std::size_t n_alive = alive.size();
  std::vector<int> alive_index(field.node_count(), -1);
  for (std::size_t i = 0; i < n_alive; ++i) alive_index[alive[i]] = static_cast<int>(i);

  std::vector<int> heads;
  std::vector<double> d1(n_alive, kInf);  // nearest head, squared
  std::vector<double> d2(n_alive, kInf);  // second nearest head, squared
  std::vector<int> n1(n_alive, -1);       // id of the nearest head

  auto insert_head = [&](int h) {
    heads.push_back(h);
    for (std::size_t i = 0; i < n_alive; ++i) {
      const double d = squared_distance(field.nodes[alive[i]], field.nodes[h]);
      if (d < d1[i]) {
        d2[i] = d1[i];
        d1[i] = d;
        n1[i] = h;
      } else if (d < d2[i]) {
        d2[i] = d;
      }
    }
  };
  auto rebuild = [&] {
    std::fill(d1.begin(), d1.end(), kInf);
    std::fill(d2.begin(), d2.end(), kInf);
    std::fill(n1.begin(), n1.end(), -1);
    auto current = heads;
    heads.clear();
    for (int h : current) insert_head(h);
  };
  auto is_head = [&](int v) {
    return std::find(heads.begin(), heads.end(), v) != heads.end();
  };
  auto current_cost = [&] {
    double cost = 0.0;
    for (std::size_t i = 0; i < n_alive; ++i)
      if (!is_head(alive[i])) cost += d1[i];
    return cost;
  };

  // Greedy start: repeatedly add the candidate that minimizes the cost.
  for (int step = 0; step < k; ++step) {
    int best_h = -1;
    double best_cost = kInf;
    for (int c : eligible) {
      if (is_head(c)) continue;
      double cost = 0.0;
      for (std::size_t i = 0; i < n_alive; ++i) {
        const int v = alive[i];
        if (v == c || is_head(v)) continue;
        cost += std::min(d1[i], squared_distance(field.nodes[v], field.nodes[c]));
      }
      if (cost < best_cost) {
        best_cost = cost;
        best_h = c;
      }
    }
    insert_head(best_h);
  }

  // Best-improvement medoid swaps until no swap helps.
  const int kMaxSweeps = 200;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double base_cost = current_cost();
    double best_cost = base_cost;
    int best_out = -1, best_in = -1;
    for (int out : heads) {
      for (int in : eligible) {
        if (is_head(in)) continue;
        double cost = 0.0;
        for (std::size_t i = 0; i < n_alive; ++i) {
          const int v = alive[i];
          if (v == in) continue;
          if (v != out && is_head(v)) continue;
          const double without_out = (n1[i] == out) ? d2[i] : d1[i];
          cost += std::min(without_out, squared_distance(field.nodes[v], field.nodes[in]));
        }
        if (cost < best_cost - 1e-12 * (1.0 + base_cost)) {
          best_cost = cost;
          best_out = out;
          best_in = in;
        }
      }
    }
    if (best_out < 0) break;
    std::replace(heads.begin(), heads.end(), best_out, best_in);
    rebuild();
  }

  std::sort(heads.begin(), heads.end());
  return heads;
}

}  // namespace

std::vector<int> elect_heads_leach_c(const std::vector<NodeState>& states,
                                     const Field& field, int k) {
  if (k < 1) throw std::invalid_argument("elect_heads_leach_c: k must be >= 1");
  const std::vector<int> alive = alive_ids(states);
  if (alive.empty()) throw std::invalid_argument("elect_heads_leach_c: no alive node");

  double sum = 0.0;
  for (int id : alive) sum += states[id].residual;
  const double avg = sum / static_cast<double>(alive.size());

  std::vector<int> eligible;
  for (int id : alive)
    if (states[id].residual >= avg) eligible.push_back(id);
  if (eligible.empty())
    throw std::logic_error("elect_heads_leach_c: no eligible node (max < average?)");

  k = std::min<int>(k, static_cast<int>(eligible.size()));
  if (k == static_cast<int>(eligible.size())) return eligible;

  // Exact answer is affordable on small instances; beyond that, greedy
  // start plus best-improvement swaps.
  constexpr long long kExhaustiveBudget = 4000;
  if (binomial_capped(static_cast<int>(eligible.size()), k, kExhaustiveBudget) <=
      kExhaustiveBudget) {
    return leach_c_exhaustive(eligible, k, alive, field);
  }
  return leach_c_local_search(eligible, k, alive, field);
}

std::map<int, int> assign_nearest(const std::vector<int>& members,
                                  const std::vector<int>& heads, const Field& field) {
  if (heads.empty())
    throw std::invalid_argument("assign_nearest: empty head set");

  std::vector<int> sorted_heads = heads;
  std::sort(sorted_heads.begin(), sorted_heads.end());

  std::map<int, int> membership;
  for (int m : members) {
    int best = -1;
    double best_d = kInf;
    for (int h : sorted_heads) {
      const double d = distance(field.nodes[m], field.nodes[h]);
      if (d < best_d) {  // ties keep the lowest head id
        best_d = d;
        best = h;
      }
    }
    membership[m] = best;
  }
  return membership;
}

ModifiedAssignment assign_modified(const std::vector<int>& members,
                                   const std::vector<int>& heads, const Field& field) {
  std::vector<int> sorted_heads = heads;
  std::sort(sorted_heads.begin(), sorted_heads.end());

  ModifiedAssignment out;
  for (int m : members) {
    const double member_to_bs = distance(field.nodes[m], field.bs);
    int best = -1;
    double best_d = kInf;
    for (int h : sorted_heads) {
      if (!(distance(field.nodes[h], field.bs) < member_to_bs)) continue;
      const double d = distance(field.nodes[m], field.nodes[h]);
      if (d < best_d) {
        best_d = d;
        best = h;
      }
    }
    if (best >= 0)
      out.membership[m] = best;
    else
      out.direct.push_back(m);
  }
  std::sort(out.direct.begin(), out.direct.end());
  return out;
}

namespace {

std::vector<std::vector<int>> neighbor_graph(const std::vector<int>& alive,
                                             const Field& field, double radio_range) {
  std::vector<std::vector<int>> adj(field.node_count());
  for (std::size_t i = 0; i < alive.size(); ++i) {
    for (std::size_t j = i + 1; j < alive.size(); ++j) {
      const int a = alive[i], b = alive[j];
      if (distance(field.nodes[a], field.nodes[b]) <= radio_range) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<int> greedy_route(int source, const std::vector<std::vector<int>>& adj,
                              const Field& field, double radio_range) {
  std::vector<int> path = {source};
  int cur = source;
  while (true) {
    if (distance(field.nodes[cur], field.bs) <= radio_range) {
      path.push_back(kBsSentinel);
      break;
    }
    const double cur_to_bs = distance(field.nodes[cur], field.bs);
    int best = -1;
    double best_d = cur_to_bs;  // only strictly improving hops
    for (int v : adj[cur]) {
      const double d = distance(field.nodes[v], field.bs);
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    if (best < 0) break;  // stuck: undelivered, no sentinel
    path.push_back(best);
    cur = best;
  }
  return path;
}

std::vector<int> flood_order(int source, const std::vector<std::vector<int>>& adj,
                             const Field& field, double radio_range, int node_count) {
  std::vector<int> order;
  std::vector<char> reached(node_count, 0);
  std::deque<int> queue = {source};
  reached[source] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (int v : adj[u]) {
      if (reached[v]) continue;
      reached[v] = 1;
      queue.push_back(v);
    }
  }
  for (int u : order) {
    if (distance(field.nodes[u], field.bs) <= radio_range) {
      order.push_back(kBsSentinel);
      break;
    }
  }
  return order;
}

}  // namespace

std::map<int, std::vector<int>> build_mesh_routes(const std::vector<NodeState>& states,
                                                  const Field& field, ProtocolKind mode,
                                                  double radio_range) {
  if (!is_mesh(mode)) throw std::invalid_argument("build_mesh_routes: not a mesh kind");
  if (!(radio_range > 0.0))
    throw std::invalid_argument("build_mesh_routes: radio_range must be > 0");

  const std::vector<int> alive = alive_ids(states);
  const auto adj = neighbor_graph(alive, field, radio_range);

  std::map<int, std::vector<int>> routes;
  for (int s : alive) {
    routes[s] = mode == ProtocolKind::mesh_greedy
                    ? greedy_route(s, adj, field, radio_range)
                    : flood_order(s, adj, field, radio_range, field.node_count());
  }
  return routes;
}

RoundPlan build_round_plan(ProtocolKind kind, std::vector<NodeState>& states,
                           const Field& field, int round, const LeachConfig& cfg,
                           double radio_range, double initial_energy,
                           Xoshiro256PlusPlus& rng) {
  if (static_cast<int>(states.size()) != field.node_count())
    throw std::invalid_argument("build_round_plan: states/field size mismatch");
  const std::vector<int> alive = alive_ids(states);
  if (alive.empty()) throw std::invalid_argument("build_round_plan: all nodes dead");

  RoundPlan plan;
  plan.kind = kind;
  switch (kind) {
    case ProtocolKind::direct:
      plan.direct = alive;
      break;

    case ProtocolKind::leach:
    case ProtocolKind::leach_energy:
    case ProtocolKind::leach_boost: {
      plan.heads = elect_heads_leach(states, round, cfg, kind, initial_energy, rng);
      std::vector<int> members;
      std::set_difference(alive.begin(), alive.end(), plan.heads.begin(),
                          plan.heads.end(), std::back_inserter(members));
      if (plan.heads.empty())
        plan.direct = members;  // no head this round: everyone uplinks
      else
        plan.membership = assign_nearest(members, plan.heads, field);
      break;
    }

    case ProtocolKind::leach_modified: {
      plan.heads = elect_heads_leach(states, round, cfg, ProtocolKind::leach,
                                     initial_energy, rng);
      std::vector<int> members;
      std::set_difference(alive.begin(), alive.end(), plan.heads.begin(),
                          plan.heads.end(), std::back_inserter(members));
      auto assignment = assign_modified(members, plan.heads, field);
      plan.membership = std::move(assignment.membership);
      plan.direct = std::move(assignment.direct);
      break;
    }

    case ProtocolKind::leach_c: {
      const int k = std::max(1, static_cast<int>(std::lround(
                                    cfg.p * static_cast<double>(alive.size()))));
      plan.heads = elect_heads_leach_c(states, field, k);
      std::vector<int> members;
      std::set_difference(alive.begin(), alive.end(), plan.heads.begin(),
                          plan.heads.end(), std::back_inserter(members));
      if (!members.empty())
        plan.membership = assign_nearest(members, plan.heads, field);
      break;
    }

    case ProtocolKind::mesh_greedy:
    case ProtocolKind::mesh_flood:
      plan.routes = build_mesh_routes(states, field, kind, radio_range);
      break;
  }
  return plan;
}

void validate_plan(const RoundPlan& plan, const std::vector<NodeState>& states) {
  const int n = static_cast<int>(states.size());
  auto check_alive = [&](int id, const char* role) {
    if (id < 0 || id >= n || !states[id].alive)
      throw std::logic_error(std::string("RoundPlan: dead or invalid node in ") + role);
  };

  if (is_mesh(plan.kind)) {
    if (!plan.heads.empty() || !plan.membership.empty() || !plan.direct.empty())
      throw std::logic_error("RoundPlan: mesh plan must only carry routes");
    std::set<int> sources;
    for (const auto& [source, path] : plan.routes) {
      check_alive(source, "routes");
      sources.insert(source);
      if (path.empty() || path.front() != source)
        throw std::logic_error("RoundPlan: route must start at its source");
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] == kBsSentinel) {
          if (i + 1 != path.size())
            throw std::logic_error("RoundPlan: BS sentinel must terminate the route");
        } else {
          check_alive(path[i], "routes");
        }
      }
    }
    for (const auto& s : states)
      if (s.alive && !sources.count(s.id))
        throw std::logic_error("RoundPlan: alive node missing from mesh routes");
    return;
  }

  if (!plan.routes.empty())
    throw std::logic_error("RoundPlan: routes present for a cluster protocol");

  std::set<int> seen;
  auto add_unique = [&](int id, const char* role) {
    check_alive(id, role);
    if (!seen.insert(id).second)
      throw std::logic_error("RoundPlan: node appears in two roles");
  };
  for (int h : plan.heads) add_unique(h, "heads");
  for (const auto& [m, h] : plan.membership) {
    add_unique(m, "membership");
    if (!std::binary_search(plan.heads.begin(), plan.heads.end(), h))
      throw std::logic_error("RoundPlan: member assigned to a non-head");
  }
  for (int d : plan.direct) add_unique(d, "direct");
  for (const auto& s : states) {
    if (s.alive && !seen.count(s.id))
      throw std::logic_error("RoundPlan: alive node missing from every role");
    if (!s.alive && seen.count(s.id))
      throw std::logic_error("RoundPlan: dead node present in plan");
  }
}

}  // namespace wsnsim
