#include "hbloc/simharness.hpp"

#include <algorithm>
#include <functional>
#include <thread>

#include "hbloc/rng.hpp"

namespace hbloc {

namespace {

// Runs fn(i) for i in [0, n) over the requested number of worker threads.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t]() {
      for (int i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

RxGroundTruth sample_rx(std::mt19937_64& rng, const Scenario& cfg) {
  std::uniform_real_distribution<double> theta_dist(-cfg.theta_max, cfg.theta_max);
  std::uniform_real_distribution<double> dist_dist(cfg.d_min, cfg.d0);
  const double theta = theta_dist(rng);
  const double d = dist_dist(rng);
  return RxGroundTruth::polar(theta, d);
}

ErrorStats run_campaign(const CompiledScenario& sc, int n_iter, std::uint64_t master_seed,
                        int threads) {
  if (n_iter < 1) throw ConfigError("campaign needs at least one iteration");
  std::vector<double> errors(static_cast<std::size_t>(n_iter));
  std::vector<int> pilots(static_cast<std::size_t>(n_iter));

  parallel_for(n_iter, threads, [&](int i) {
    std::mt19937_64 rng = derive_rng(master_seed, static_cast<std::uint64_t>(i));
    const RxGroundTruth rx = sample_rx(rng, sc.cfg);
    const LocalizeResult result = localize(sc, rx, sc.cfg.mode, rng);
    errors[static_cast<std::size_t>(i)] = result.estimate.error;
    pilots[static_cast<std::size_t>(i)] = result.trace.pilot_count();
  });
  return ErrorStats::from(std::move(errors), pilots, sc.resolution());
}

std::vector<SweepPoint> noise_sweep(const Scenario& base, const std::vector<double>& pn_dbm,
                                    int n_iter, std::uint64_t master_seed, int threads) {
  std::vector<SweepPoint> out;
  out.reserve(pn_dbm.size());
  for (double dbm : pn_dbm) {
    Scenario cfg = base;
    cfg.noise = NoiseModel::awgn_dbm(dbm);
    const CompiledScenario sc = compile(cfg);
    // Common random numbers across sweep points and codebooks.
    const ErrorStats stats = run_campaign(sc, n_iter, master_seed, threads);
    out.push_back(SweepPoint{dbm, stats.success_probability, stats.mean, n_iter});
  }
  return out;
}

std::vector<LevelSweepEntry> level_sweep(const Scenario& base, const std::vector<int>& levels,
                                         int n_iter, std::uint64_t master_seed, int threads) {
  std::vector<LevelSweepEntry> out;
  out.reserve(levels.size());
  for (int level : levels) {
    Scenario cfg = base;
    cfg.levels_focus = level;
    const CompiledScenario sc = compile(cfg);
    out.push_back(LevelSweepEntry{level, run_campaign(sc, n_iter, master_seed, threads)});
  }
  return out;
}

TrackCampaignResult run_track_campaign(const CompiledScenario& sc, int n_trajectories,
                                       std::uint64_t master_seed, int threads) {
  if (n_trajectories < 1) throw ConfigError("track campaign needs at least one trajectory");
  std::vector<TrackRunResult> runs(static_cast<std::size_t>(n_trajectories));
  parallel_for(n_trajectories, threads, [&](int i) {
    std::mt19937_64 rng = derive_rng(master_seed, static_cast<std::uint64_t>(i));
    const Trajectory traj = sample_trajectory(sc.cfg, rng);
    runs[static_cast<std::size_t>(i)] = run_track(sc, traj, rng);
  });

  TrackCampaignResult result;
  std::vector<double> errors;
  std::vector<int> pilots;
  for (int i = 0; i < n_trajectories; ++i) {
    for (const auto& epoch : runs[static_cast<std::size_t>(i)].epochs) {
      result.epochs.push_back(epoch);
      result.traj_ids.push_back(i);
      errors.push_back(epoch.error);
      pilots.push_back(epoch.pilots);
    }
  }
  result.stats = ErrorStats::from(std::move(errors), pilots, sc.resolution());
  return result;
}

}  // namespace hbloc
