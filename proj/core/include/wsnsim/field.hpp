#pragma once

#include <cstdint>
#include <vector>

namespace wsnsim {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

// Node deployment shared by every protocol. Node ids are the vector index
// and stay stable for the whole simulation. `bs` is the base (main) station;
// it is not a node and has no energy budget.
struct Field {
  std::vector<Position> nodes;
  Position bs;
  double width = 0.0;
  double height = 0.0;

  int node_count() const { return static_cast<int>(nodes.size()); }

  friend bool operator==(const Field&, const Field&) = default;
};

// Default base station: centered horizontally, offset above the field so
// that "closer to the base station" is a meaningful ordering for every node.
Position default_bs_position(double width, double height);

// n i.i.d. uniform positions over [0,width]x[0,height] from the seeded
// repo-wide generator. Same seed, same field, bit for bit.
Field deploy_uniform(int n, double width, double height, std::uint64_t seed);

// nx*ny lattice with the given spacing, node id = row*nx + col,
// position (col*spacing, row*spacing).
Field deploy_grid(int nx, int ny, double spacing);

}  // namespace wsnsim
