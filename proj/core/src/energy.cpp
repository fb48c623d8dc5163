#include "wsnsim/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace wsnsim {

double crossover_distance(const RadioParams& p) {
  return std::sqrt(p.eps_fs / p.eps_mp);
}

double tx_cost(std::int64_t bits, double d, const RadioParams& p) {
  if (bits < 0) throw std::invalid_argument("tx_cost: negative bit count");
  if (d < 0.0) throw std::invalid_argument("tx_cost: negative distance");
  const double b = static_cast<double>(bits);
  if (d < crossover_distance(p)) return b * p.e_elec + b * p.eps_fs * d * d;
  return b * p.e_elec + b * p.eps_mp * d * d * d * d;
}

double rx_cost(std::int64_t bits, const RadioParams& p) {
  if (bits < 0) throw std::invalid_argument("rx_cost: negative bit count");
  return static_cast<double>(bits) * p.e_elec;
}

double aggregate_cost(std::int64_t bits, std::int64_t n_signals, const RadioParams& p) {
  if (bits < 0 || n_signals < 0)
    throw std::invalid_argument("aggregate_cost: negative input");
  return static_cast<double>(n_signals) * static_cast<double>(bits) * p.e_da;
}

}  // namespace wsnsim
