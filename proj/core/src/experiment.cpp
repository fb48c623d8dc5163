#include "wsnsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace wsnsim {

namespace {

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("WSNSIM_WORKERS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) n = static_cast<unsigned>(parsed);
  }
  n = std::max(1u, n);
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

std::string format_g9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::vector<SimulationResult> run_protocol_sweep(const RunSettings& settings,
                                                 const std::vector<ProtocolKind>& protocols,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const ObserverFactory& observers) {
  struct Job {
    ProtocolKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (ProtocolKind kind : protocols)
    for (std::uint64_t seed : seeds) jobs.push_back({kind, seed});

  std::vector<SimulationResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const RoundObserver observer =
            observers ? observers(jobs[i].kind, jobs[i].seed) : RoundObserver{};
        results[i] = run_simulation(settings, jobs[i].kind, jobs[i].seed, observer);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const unsigned workers = worker_count(jobs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

void write_round_csv(std::ostream& out, const SimulationResult& result) {
  out << "round,alive,heads,direct,delivered,energy_charged_j,total_residual_j\n";
  const int n = static_cast<int>(result.final_states.size());
  const double initial = static_cast<double>(n) * result.settings.radio.e_init;
  int alive = n;
  double charged_so_far = 0.0;
  for (const auto& r : result.reports) {
    alive -= static_cast<int>(r.deaths.size());
    charged_so_far += r.energy_charged;
    out << r.round << ',' << alive << ',' << r.heads << ',' << r.direct << ','
        << r.delivered_sources << ',' << format_g9(r.energy_charged) << ','
        << format_g9(initial - charged_so_far) << '\n';
  }
}

nlohmann::json settings_to_json(const RunSettings& s) {
  return nlohmann::json{
      {"nodes", s.nodes},
      {"width", s.width},
      {"height", s.height},
      {"grid", s.grid},
      {"grid_nx", s.grid_nx},
      {"grid_ny", s.grid_ny},
      {"grid_spacing", s.grid_spacing},
      {"bs_x", s.bs.x},
      {"bs_y", s.bs.y},
      {"e_elec", s.radio.e_elec},
      {"eps_fs", s.radio.eps_fs},
      {"eps_mp", s.radio.eps_mp},
      {"e_da", s.radio.e_da},
      {"data_bits", s.radio.data_bits},
      {"ctrl_bits", s.radio.ctrl_bits},
      {"e_init", s.radio.e_init},
      {"p", s.leach.p},
      {"boost_rounds", s.leach.boost_rounds},
      {"boost_factor", s.leach.boost_factor},
      {"frames_per_round", s.frames_per_round},
      {"max_rounds", s.max_rounds},
      {"control_energy", s.control_energy},
      {"radio_range", s.radio_range},
  };
}

nlohmann::json summary_to_json(ProtocolKind protocol, const RunSettings& settings,
                               const std::vector<SimulationResult>& runs) {
  nlohmann::json run_list = nlohmann::json::array();
  for (const auto& run : runs) {
    const LifetimeSummary s = lifetime_summary(run);
    run_list.push_back({
        {"seed", run.seed},
        {"rounds", run.reports.size()},
        {"fnd", s.fnd},
        {"hnd", s.hnd},
        {"lnd", s.lnd},
        {"total_energy_j", s.total_energy},
        {"total_delivered", s.total_delivered},
        {"energy_per_delivered_bit_j",
         std::isnan(s.energy_per_delivered_bit) ? nlohmann::json()
                                                : nlohmann::json(s.energy_per_delivered_bit)},
    });
  }
  return nlohmann::json{
      {"protocol", to_string(protocol)},
      {"settings", settings_to_json(settings)},
      {"runs", run_list},
  };
}

namespace {

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void print_summary_screen(const ComparisonTable& table, std::size_t csv_count,
                          const std::string& out_dir) {
  std::printf("%-16s %5s %11s %11s %11s %15s %17s\n", "protocol", "runs", "median_fnd",
              "median_hnd", "median_lnd", "mean_energy_j", "median_epdb_j");
  for (const auto& r : table.rows) {
    std::printf("%-16s %5d %11.0f %11.0f %11.0f %15.6g %17.6g\n",
                to_string(r.protocol).c_str(), r.runs, r.median_fnd, r.median_hnd,
                r.median_lnd, r.mean_total_energy, r.median_energy_per_bit);
  }
  const auto leach_row = std::find_if(table.rows.begin(), table.rows.end(), [](const auto& r) {
    return r.protocol == ProtocolKind::leach;
  });
  const bool have_modified =
      std::any_of(table.rows.begin(), table.rows.end(), [](const auto& r) {
        return r.protocol == ProtocolKind::leach_modified;
      });
  if (have_modified && leach_row != table.rows.end()) {
    std::printf(
        "\nleach_modified vs leach: fnd %+.1f%%, hnd %+.1f%%, "
        "energy/bit saving %.1f%% (reference point: 16%%)\n",
        leach_row->improvement_fnd_pct, leach_row->improvement_hnd_pct,
        leach_row->improvement_energy_per_bit_pct);
  }
  std::printf("\nwrote %zu round CSVs to %s\n", csv_count, out_dir.c_str());
}

}  // namespace

int run_experiment(const ScenarioConfig& cfg) {
  try {
    const RunSettings settings = resolve_settings(cfg);
    const fs::path out_dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

    const auto results = run_protocol_sweep(settings, cfg.protocols, cfg.seeds);

    std::size_t csv_count = 0;
    std::map<ProtocolKind, std::vector<SimulationResult>> by_protocol;
    for (const auto& run : results) {
      std::ostringstream csv;
      write_round_csv(csv, run);
      write_file(out_dir / (to_string(run.protocol) + "_seed" + std::to_string(run.seed) +
                            ".csv"),
                 csv.str());
      ++csv_count;
      by_protocol[run.protocol].push_back(run);
    }

    std::map<ProtocolKind, std::vector<LifetimeSummary>> summaries;
    for (const auto& [kind, runs] : by_protocol) {
      write_file(out_dir / (to_string(kind) + "_summary.json"),
                 summary_to_json(kind, settings, runs).dump(2) + "\n");
      for (const auto& run : runs) summaries[kind].push_back(lifetime_summary(run));
    }

    if (by_protocol.size() >= 2) {
      const ComparisonTable table = compare_summaries(summaries);
      write_file(out_dir / "comparison.csv", comparison_to_csv(table));
      print_summary_screen(table, csv_count, cfg.out_dir);
    } else {
      std::printf("wrote %zu round CSVs to %s (single protocol, no comparison)\n",
                  csv_count, cfg.out_dir.c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

ComparisonTable compare_directory(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 13 && name.ends_with("_summary.json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2)
    throw std::invalid_argument("compare: need at least two *_summary.json files in " + dir);

  nlohmann::json reference_settings;
  std::map<ProtocolKind, std::vector<LifetimeSummary>> summaries;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    nlohmann::json doc;
    in >> doc;
    const ProtocolKind kind = protocol_from_string(doc.at("protocol").get<std::string>());
    if (reference_settings.is_null())
      reference_settings = doc.at("settings");
    else if (doc.at("settings") != reference_settings)
      throw std::invalid_argument("compare: mismatched settings in " + path.string());
    for (const auto& run : doc.at("runs")) {
      LifetimeSummary s;
      s.fnd = run.at("fnd").get<int>();
      s.hnd = run.at("hnd").get<int>();
      s.lnd = run.at("lnd").get<int>();
      s.total_energy = run.at("total_energy_j").get<double>();
      s.total_delivered = run.at("total_delivered").get<long long>();
      const auto& epdb = run.at("energy_per_delivered_bit_j");
      s.energy_per_delivered_bit =
          epdb.is_null() ? std::numeric_limits<double>::quiet_NaN() : epdb.get<double>();
      summaries[kind].push_back(s);
    }
  }
  return compare_summaries(summaries);
}

}  // namespace wsnsim
