#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsnsim/engine.hpp"

namespace wsnsim {

// Lifetime milestones of one run. Rounds that never happened carry the
// sentinel max_rounds + 1, so fnd <= hnd <= lnd always holds.
// energy_per_delivered_bit is NaN when nothing was ever delivered.
struct LifetimeSummary {
  int fnd = 0;  // first node death
  int hnd = 0;  // alive count dropped to ceil(n/2) or below
  int lnd = 0;  // last node death
  double total_energy = 0.0;
  long long total_delivered = 0;
  double energy_per_delivered_bit = 0.0;
};

LifetimeSummary lifetime_summary(const SimulationResult& result);

// Per-round fraction of the initial population whose report reached the
// base station.
std::vector<double> reliability_curve(const SimulationResult& result, int n_initial);

struct ComparisonRow {
  ProtocolKind protocol = ProtocolKind::leach;
  int runs = 0;
  double median_fnd = 0, iqr_fnd = 0;
  double median_hnd = 0, iqr_hnd = 0;
  double median_lnd = 0, iqr_lnd = 0;
  double mean_total_energy = 0;
  double mean_energy_per_bit = 0;
  double median_energy_per_bit = 0;
  // % improvement of leach_modified over this protocol (NaN when
  // leach_modified is not part of the comparison).
  double improvement_fnd_pct = 0;
  double improvement_hnd_pct = 0;
  double improvement_lnd_pct = 0;
  double improvement_energy_per_bit_pct = 0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // one per protocol, in enum order
};

// Aggregates per-seed summaries; medians/IQRs are order-independent.
ComparisonTable compare_summaries(
    const std::map<ProtocolKind, std::vector<LifetimeSummary>>& summaries);

// Full-result comparison: additionally rejects results whose run settings
// differ across protocols.
ComparisonTable compare(
    const std::map<ProtocolKind, std::vector<SimulationResult>>& results);

std::string comparison_to_csv(const ComparisonTable& table);
nlohmann::json comparison_to_json(const ComparisonTable& table);

}  // namespace wsnsim
