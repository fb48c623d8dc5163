#pragma once

#include <cstdint>

namespace wsnsim {

// First-order radio model. Transmitting b bits over distance d costs
//   b*e_elec + b*eps_fs*d^2   (d <  d0, free-space amplifier)
//   b*e_elec + b*eps_mp*d^4   (d >= d0, multipath amplifier)
// with crossover d0 = sqrt(eps_fs/eps_mp); receiving costs b*e_elec and
// fusing k signals of b bits costs k*b*e_da. The defaults below are the
// values conventionally used in LEACH-family studies; every field is a
// config key and can be overridden.
struct RadioParams {
  double e_elec = 50e-9;     // J/bit, TX and RX electronics
  double eps_fs = 10e-12;    // J/bit/m^2, free-space amplifier
  double eps_mp = 0.0013e-12;  // J/bit/m^4, multipath amplifier
  double e_da = 5e-9;        // J/bit/signal, aggregation
  std::int64_t data_bits = 4000;
  std::int64_t ctrl_bits = 200;
  double e_init = 0.5;       // J, initial energy per node

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

double crossover_distance(const RadioParams& p);

double tx_cost(std::int64_t bits, double d, const RadioParams& p);
double rx_cost(std::int64_t bits, const RadioParams& p);
double aggregate_cost(std::int64_t bits, std::int64_t n_signals, const RadioParams& p);

}  // namespace wsnsim
