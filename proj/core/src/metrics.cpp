#include "wsnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace wsnsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Linear-interpolation quantile on a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return kNaN;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return quantile(v, 0.5);
}

double iqr(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return quantile(v, 0.75) - quantile(v, 0.25);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::vector<double> drop_nan(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v)
    if (!std::isnan(x)) out.push_back(x);
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "";  // undefined cells stay empty in CSV
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

LifetimeSummary lifetime_summary(const SimulationResult& result) {
  if (result.reports.empty())
    throw std::invalid_argument("lifetime_summary: empty result");

  const int n = static_cast<int>(result.final_states.size());
  const int sentinel = result.settings.max_rounds + 1;
  const int half = (n + 1) / 2;

  LifetimeSummary s;
  s.fnd = s.hnd = s.lnd = sentinel;

  int alive = n;
  for (const auto& report : result.reports) {
    alive -= static_cast<int>(report.deaths.size());
    if (s.fnd == sentinel && !report.deaths.empty()) s.fnd = report.round;
    // The ceil(n/2) threshold needs at least one death to be meaningful
    // (otherwise a 1-node network would be "half dead" while fully alive).
    if (s.hnd == sentinel && alive <= half && alive < n) s.hnd = report.round;
    if (s.lnd == sentinel && alive == 0) s.lnd = report.round;
    s.total_energy += report.energy_charged;
    s.total_delivered += report.delivered_sources;
  }

  const double bits =
      static_cast<double>(s.total_delivered) * static_cast<double>(result.settings.radio.data_bits);
  s.energy_per_delivered_bit = s.total_delivered > 0 ? s.total_energy / bits : kNaN;
  return s;
}

std::vector<double> reliability_curve(const SimulationResult& result, int n_initial) {
  std::vector<double> curve;
  curve.reserve(result.reports.size());
  for (const auto& report : result.reports)
    curve.push_back(static_cast<double>(report.delivered_sources) /
                    static_cast<double>(n_initial));
  return curve;
}

ComparisonTable compare_summaries(
    const std::map<ProtocolKind, std::vector<LifetimeSummary>>& summaries) {
  if (summaries.size() < 2)
    throw std::invalid_argument("compare: need at least two protocols");
  for (const auto& [kind, list] : summaries)
    if (list.empty())
      throw std::invalid_argument("compare: no runs for " + to_string(kind));

  ComparisonTable table;
  for (const auto& [kind, list] : summaries) {
    ComparisonRow row;
    row.protocol = kind;
    row.runs = static_cast<int>(list.size());

    std::vector<double> fnd, hnd, lnd, energy, epdb;
    for (const auto& s : list) {
      fnd.push_back(s.fnd);
      hnd.push_back(s.hnd);
      lnd.push_back(s.lnd);
      energy.push_back(s.total_energy);
      epdb.push_back(s.energy_per_delivered_bit);
    }
    row.median_fnd = median(fnd);
    row.iqr_fnd = iqr(fnd);
    row.median_hnd = median(hnd);
    row.iqr_hnd = iqr(hnd);
    row.median_lnd = median(lnd);
    row.iqr_lnd = iqr(lnd);
    row.mean_total_energy = mean(energy);
    const auto defined_epdb = drop_nan(epdb);
    row.mean_energy_per_bit = mean(defined_epdb);
    row.median_energy_per_bit = median(defined_epdb);
    table.rows.push_back(row);
  }

  const auto modified = std::find_if(table.rows.begin(), table.rows.end(), [](const auto& r) {
    return r.protocol == ProtocolKind::leach_modified;
  });
  for (auto& row : table.rows) {
    if (modified == table.rows.end()) {
      row.improvement_fnd_pct = row.improvement_hnd_pct = kNaN;
      row.improvement_lnd_pct = row.improvement_energy_per_bit_pct = kNaN;
      continue;
    }
    auto gain = [](double mod, double base) {
      return base != 0.0 && !std::isnan(base) && !std::isnan(mod)
                 ? (mod - base) / base * 100.0
                 : kNaN;
    };
    // Lower energy per bit is better, so the saving flips the ratio.
    auto saving = [](double mod, double base) {
      return base != 0.0 && !std::isnan(base) && !std::isnan(mod)
                 ? (base - mod) / base * 100.0
                 : kNaN;
    };
    row.improvement_fnd_pct = gain(modified->median_fnd, row.median_fnd);
    row.improvement_hnd_pct = gain(modified->median_hnd, row.median_hnd);
    row.improvement_lnd_pct = gain(modified->median_lnd, row.median_lnd);
    row.improvement_energy_per_bit_pct =
        saving(modified->median_energy_per_bit, row.median_energy_per_bit);
  }
  return table;
}

ComparisonTable compare(
    const std::map<ProtocolKind, std::vector<SimulationResult>>& results) {
  const RunSettings* reference = nullptr;
  std::map<ProtocolKind, std::vector<LifetimeSummary>> summaries;
  for (const auto& [kind, runs] : results) {
    for (const auto& run : runs) {
      if (run.protocol != kind)
        throw std::invalid_argument("compare: result filed under the wrong protocol");
      if (reference == nullptr)
        reference = &run.settings;
      else if (!(run.settings == *reference))
        throw std::invalid_argument("compare: mismatched run settings across protocols");
      summaries[kind].push_back(lifetime_summary(run));
    }
  }
  return compare_summaries(summaries);
}

std::string comparison_to_csv(const ComparisonTable& table) {
  std::string out =
      "protocol,runs,median_fnd,iqr_fnd,median_hnd,iqr_hnd,median_lnd,iqr_lnd,"
      "mean_total_energy_j,mean_energy_per_bit_j,median_energy_per_bit_j,"
      "improvement_fnd_pct,improvement_hnd_pct,improvement_lnd_pct,"
      "improvement_energy_per_bit_pct\n";
  for (const auto& r : table.rows) {
    out += to_string(r.protocol);
    out += ',' + std::to_string(r.runs);
    for (double x : {r.median_fnd, r.iqr_fnd, r.median_hnd, r.iqr_hnd, r.median_lnd,
                     r.iqr_lnd, r.mean_total_energy, r.mean_energy_per_bit,
                     r.median_energy_per_bit, r.improvement_fnd_pct, r.improvement_hnd_pct,
                     r.improvement_lnd_pct, r.improvement_energy_per_bit_pct})
      out += ',' + format_double(x);
    out += '\n';
  }
  return out;
}

nlohmann::json comparison_to_json(const ComparisonTable& table) {
  auto value_or_null = [](double x) {
    return std::isnan(x) ? nlohmann::json() : nlohmann::json(x);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({
        {"protocol", to_string(r.protocol)},
        {"runs", r.runs},
        {"median_fnd", r.median_fnd},
        {"iqr_fnd", r.iqr_fnd},
        {"median_hnd", r.median_hnd},
        {"iqr_hnd", r.iqr_hnd},
        {"median_lnd", r.median_lnd},
        {"iqr_lnd", r.iqr_lnd},
        {"mean_total_energy_j", r.mean_total_energy},
        {"mean_energy_per_bit_j", value_or_null(r.mean_energy_per_bit)},
        {"median_energy_per_bit_j", value_or_null(r.median_energy_per_bit)},
        {"improvement_fnd_pct", value_or_null(r.improvement_fnd_pct)},
        {"improvement_hnd_pct", value_or_null(r.improvement_hnd_pct)},
        {"improvement_lnd_pct", value_or_null(r.improvement_lnd_pct)},
        {"improvement_energy_per_bit_pct", value_or_null(r.improvement_energy_per_bit_pct)},
    });
  }
  return nlohmann::json{{"comparison", rows}};
}

}  // namespace wsnsim
