#include "hbloc/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hbloc {

const char* const kVersion = "hbloc 0.1.0";

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string cdf_csv(const ErrorStats& stats) {
  std::ostringstream out;
  out << "error_m,cum_fraction\n";
  for (const CdfPoint& p : stats.cdf())
    out << format_double(p.error) << ',' << format_double(p.fraction) << '\n';
  return out.str();
}

std::string noise_sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "noise_dbm,success_probability,mean_error_m,n\n";
  for (const SweepPoint& p : points)
    out << format_double(p.noise_dbm) << ',' << format_double(p.success_probability) << ','
        << format_double(p.mean_error) << ',' << p.n << '\n';
  return out.str();
}

std::string level_sweep_csv(const std::vector<LevelSweepEntry>& entries) {
  std::ostringstream out;
  out << "last_level,error_m,cum_fraction\n";
  for (const LevelSweepEntry& entry : entries)
    for (const CdfPoint& p : entry.stats.cdf())
      out << entry.last_level << ',' << format_double(p.error) << ','
          << format_double(p.fraction) << '\n';
  return out.str();
}

std::string track_csv(const TrackCampaignResult& result) {
  std::ostringstream out;
  out << "trajectory,slot,true_x,true_z,est_x,est_z,error,pilots\n";
  for (std::size_t i = 0; i < result.epochs.size(); ++i) {
    const EpochRecord& e = result.epochs[i];
    out << result.traj_ids[i] << ',' << e.slot << ',' << format_double(e.truth.x) << ','
        << format_double(e.truth.z) << ',' << format_double(e.estimate.x) << ','
        << format_double(e.estimate.z) << ',' << format_double(e.error) << ',' << e.pilots
        << '\n';
  }
  return out.str();
}

nlohmann::json summary_json(const Scenario& cfg, const ErrorStats& stats, int n,
                            std::uint64_t seed) {
  return {
      {"version", kVersion},
      {"scenario", cfg.name},
      {"mode", to_string(cfg.mode)},
      {"codebook", to_string(cfg.codebook_kind)},
      {"n", n},
      {"seed", seed},
      {"mean_error_m", stats.mean},
      {"max_error_m", stats.max},
      {"p999_error_m", stats.p999},
      {"success_probability", stats.success_probability},
      {"resolution_m", stats.resolution},
      {"mean_pilots", stats.mean_pilots},
      {"config", cfg.to_json()},
  };
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace hbloc
