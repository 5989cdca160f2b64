#pragma once

#include <cstdint>

#include "hbloc/stats.hpp"
#include "hbloc/tracker.hpp"

namespace hbloc {

/// RX position uniform in angle and in distance (not uniform in area).
RxGroundTruth sample_rx(std::mt19937_64& rng, const Scenario& cfg);

/// Monte-Carlo localization campaign. Per-iteration seeds derive from the
/// master seed and the iteration index, so the result does not depend on the
/// worker count.
ErrorStats run_campaign(const CompiledScenario& sc, int n_iter, std::uint64_t master_seed,
                        int threads = 1);

struct SweepPoint {
  double noise_dbm;
  double success_probability;
  double mean_error;
  int n;
};

/// Reruns the campaign across AWGN power levels.
std::vector<SweepPoint> noise_sweep(const Scenario& base, const std::vector<double>& pn_dbm,
                                    int n_iter, std::uint64_t master_seed, int threads = 1);

struct LevelSweepEntry {
  int last_level;
  ErrorStats stats;
};

/// Reruns the campaign with different last beam-focusing codebook levels.
std::vector<LevelSweepEntry> level_sweep(const Scenario& base, const std::vector<int>& levels,
                                         int n_iter, std::uint64_t master_seed, int threads = 1);

struct TrackCampaignResult {
  ErrorStats stats;                 // pooled per-epoch errors over all trajectories
  std::vector<EpochRecord> epochs;  // flattened; trajectory id in traj_ids
  std::vector<int> traj_ids;
};

/// Monte-Carlo tracking campaign over independent random trajectories.
TrackCampaignResult run_track_campaign(const CompiledScenario& sc, int n_trajectories,
                                       std::uint64_t master_seed, int threads = 1);

}  // namespace hbloc
