#pragma once

namespace wsnsim {

// Per-sensor state carried across rounds. `residual` never goes negative:
// a node that cannot afford an action dies on the spot (residual zeroed,
// action skipped). Election bookkeeping: `served_head_in_epoch` blocks a
// second headship within one epoch, `rounds_since_head` feeds the
// starvation-boost variant.
struct NodeState {
  int id = 0;
  double residual = 0.0;
  bool alive = true;
  int rounds_since_head = 0;
  bool served_head_in_epoch = false;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

}  // namespace wsnsim
