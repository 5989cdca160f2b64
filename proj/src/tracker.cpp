#include "hbloc/tracker.hpp"

#include <algorithm>
#include <cmath>

namespace hbloc {

namespace {

bool inside_area(PlanePoint p, const AreaOfInterest& area) {
  const double d = std::hypot(p.x, p.z);
  if (d < area.d_min || d > area.d0) return false;
  return p.z > 0.0 && std::abs(std::atan2(p.x, p.z)) <= area.theta_max;
}

// Contiguous window of `count` level entries nearest to the target value,
// clamped to the level bounds. `value_of` maps 1-based index -> coordinate.
template <typename F>
std::vector<int> nearest_window(int level_size, int count, F&& value_of, double target) {
  count = std::min(count, level_size);
  int best = 1;
  double best_gap = std::abs(value_of(1) - target);
  for (int i = 2; i <= level_size; ++i) {
    const double gap = std::abs(value_of(i) - target);
    if (gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  int start = best - count / 2;
  // Shift right by one when the target sits on the upper side of the nearest
  // entry, so the window covers the closer neighbours.
  if (count % 2 == 0 && value_of(best) < target) ++start;
  start = std::clamp(start, 1, level_size - count + 1);
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i;
  return out;
}

}  // namespace

Trajectory sample_trajectory(const Scenario& cfg, std::mt19937_64& rng) {
  const AreaOfInterest area{cfg.d0, cfg.theta_max, cfg.d_min};
  std::uniform_real_distribution<double> theta_dist(-cfg.theta_max, cfg.theta_max);
  std::uniform_real_distribution<double> dist_dist(cfg.d_min, cfg.d0);
  std::uniform_real_distribution<double> heading_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> speed_dist(cfg.motion.speed_min, cfg.motion.speed_max);

  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double theta = theta_dist(rng);
    const double d = dist_dist(rng);
    const double heading = heading_dist(rng);
    Trajectory traj;
    traj.start = PlanePoint{d * std::sin(theta), d * std::cos(theta)};
    traj.dir_x = std::sin(heading);
    traj.dir_z = std::cos(heading);
    traj.speed = speed_dist(rng);
    traj.n_slots =
        static_cast<int>(std::ceil(cfg.motion.path_length_m / traj.speed)) + 1;

    bool ok = true;
    for (int slot = 0; slot < traj.n_slots && ok; ++slot)
      ok = inside_area(traj.position(slot), area);
    if (ok) return traj;
  }
  throw ConfigError("could not fit a trajectory inside the area of interest");
}

void TrackState::push(PlanePoint p) {
  history.push_back(p);
  if (history.size() > 3) history.erase(history.begin());
}

PlanePoint predict_next(const TrackState& state) {
  if (!state.can_predict())
    throw std::domain_error("prediction needs at least three estimates");
  const PlanePoint& oldest = state.history[state.history.size() - 3];
  const PlanePoint& latest = state.history.back();
  return PlanePoint{latest.x + (latest.x - oldest.x) / 2.0,
                    latest.z + (latest.z - oldest.z) / 2.0};
}

PlanePoint clamp_to_area(PlanePoint p, const AreaOfInterest& area) {
  double d = std::hypot(p.x, p.z);
  double theta = (d > 0.0) ? std::atan2(p.x, p.z) : 0.0;
  theta = std::clamp(theta, -area.theta_max, area.theta_max);
  d = std::clamp(d, area.d_min, area.d0);
  return PlanePoint{d * std::sin(theta), d * std::cos(theta)};
}

TrackStepResult track_step(const CompiledScenario& sc, TrackState& state,
                           const RxGroundTruth& rx_now, std::mt19937_64& rng) {
  const AreaOfInterest area{sc.cfg.d0, sc.cfg.theta_max, sc.cfg.d_min};
  const PlanePoint pred = clamp_to_area(predict_next(state), area);
  const double pred_theta = std::atan2(pred.x, pred.z);
  const double pred_d = std::hypot(pred.x, pred.z);
  const double k = sc.cfg.k();
  int pilots = 0;

  // Phase 1: four beams around the predicted direction at level L_t - 3,
  // then the usual tree descent to the last level.
  const DirectionCodebook& dir_cb = sc.direction_cb;
  const int start_level = std::max(1, dir_cb.depth() - 3);
  const double u_pred = std::sin(pred_theta);
  std::vector<int> candidates = nearest_window(
      1 << start_level, 4,
      [&](int i) { return dir_cb.at(start_level, i).u_center; }, u_pred);

  int chosen = candidates.front();
  for (int level = start_level; level <= dir_cb.depth(); ++level) {
    double best_power = -1.0;
    for (int idx : candidates) {
      const FocusedBeam beam = direction_beam(dir_cb.at(level, idx), sc.cfg.tx_power_w, k);
      const double p = measure(beam, rx_now, sc.rx_aperture, sc.cfg.noise, rng);
      ++pilots;
      if (p > best_power) {
        best_power = p;
        chosen = idx;
      }
    }
    if (level < dir_cb.depth()) {
      const auto [lo, hi] = children(chosen);
      candidates = {lo, hi};
    }
  }
  const double theta_hat = dir_cb.at(dir_cb.depth(), chosen).steer_rad;

  // Phase 2: four last-level focal areas around the predicted distance.
  const FocusCodebook& foc_cb = sc.focus_cb;
  const int last = foc_cb.depth();
  const std::vector<int> range_candidates = nearest_window(
      1 << last, 4, [&](int i) { return foc_cb.at(last, i).d_f; }, pred_d);

  int range_chosen = range_candidates.front();
  double best_power = -1.0;
  for (int idx : range_candidates) {
    const FocusedBeam beam = focus_beam(foc_cb.at(last, idx), theta_hat, sc.cfg.tx_power_w, k);
    const double p = measure(beam, rx_now, sc.rx_aperture, sc.cfg.noise, rng);
    ++pilots;
    if (p > best_power) {
      best_power = p;
      range_chosen = idx;
    }
  }
  const double d_hat = foc_cb.at(last, range_chosen).d_f;

  const PlanePoint pos{d_hat * std::sin(theta_hat), d_hat * std::cos(theta_hat)};
  const PlanePoint truth = rx_now.cartesian();
  const double error = std::hypot(pos.x - truth.x, pos.z - truth.z);
  state.push(pos);
  return TrackStepResult{LocationEstimate{theta_hat, d_hat, pos, error}, pilots};
}

TrackRunResult run_track(const CompiledScenario& sc, const Trajectory& traj,
                         std::mt19937_64& rng) {
  if (traj.n_slots < 1) throw ConfigError("trajectory has no slots");
  TrackRunResult result;
  result.epochs.reserve(static_cast<std::size_t>(traj.n_slots));
  TrackState state;

  for (int slot = 0; slot < traj.n_slots; ++slot) {
    const PlanePoint p = traj.position(slot);
    const RxGroundTruth rx = RxGroundTruth::polar(std::atan2(p.x, p.z), std::hypot(p.x, p.z));
    if (!state.can_predict()) {
      const LocalizeResult full = localize(sc, rx, SearchMode::measured, rng);
      state.push(full.estimate.position);
      result.epochs.push_back(EpochRecord{slot, p, full.estimate.position, full.estimate.error,
                                          full.trace.pilot_count()});
    } else {
      const TrackStepResult step = track_step(sc, state, rx, rng);
      result.epochs.push_back(
          EpochRecord{slot, p, step.estimate.position, step.estimate.error, step.pilots});
    }
  }
  return result;
}

}  // namespace hbloc
