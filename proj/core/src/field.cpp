#include "wsnsim/field.hpp"

#include <cmath>
#include <stdexcept>

#include "wsnsim/rng.hpp"

namespace wsnsim {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Position default_bs_position(double width, double height) {
  return {width / 2.0, height * 1.25};
}

Field deploy_uniform(int n, double width, double height, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("deploy_uniform: node count must be >= 1");
  if (!(width > 0.0) || !(height > 0.0))
    throw std::invalid_argument("deploy_uniform: field dimensions must be > 0");

  Xoshiro256PlusPlus rng(derive_stream_seed(seed, 0));
  Field field;
  field.width = width;
  field.height = height;
  field.bs = default_bs_position(width, height);
  field.nodes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_double() * width;
    const double y = rng.next_double() * height;
    field.nodes.push_back({x, y});
  }
  return field;
}

Field deploy_grid(int nx, int ny, double spacing) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("deploy_grid: grid counts must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("deploy_grid: spacing must be > 0");

  Field field;
  field.width = (nx - 1) * spacing;
  field.height = (ny - 1) * spacing;
  field.bs = default_bs_position(field.width, field.height);
  field.nodes.reserve(static_cast<std::size_t>(nx) * ny);
  for (int row = 0; row < ny; ++row)
    for (int col = 0; col < nx; ++col)
      field.nodes.push_back({col * spacing, row * spacing});
  return field;
}

}  // namespace wsnsim
