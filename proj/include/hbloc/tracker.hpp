#pragma once

#include "hbloc/localizer.hpp"

namespace hbloc {

/// Linear constant-speed motion sampled once per timeslot.
struct Trajectory {
  PlanePoint start;
  double dir_x = 0.0;  // unit direction
  double dir_z = 0.0;
  double speed = 0.0;  // meters per timeslot
  int n_slots = 0;     // number of positions, slot 0 = start

  PlanePoint position(int slot) const {
    return PlanePoint{start.x + dir_x * speed * slot, start.z + dir_z * speed * slot};
  }
};

/// Rejection-samples a trajectory that stays inside the area of interest and
/// covers at least the configured path length.
Trajectory sample_trajectory(const Scenario& cfg, std::mt19937_64& rng);

/// Rolling state of one tracked user: the last three estimates.
struct TrackState {
  std::vector<PlanePoint> history;  // most recent last, capped at 3

  bool can_predict() const { return history.size() >= 3; }
  void push(PlanePoint p);
};

/// Linear extrapolation from the last three estimates: the average per-slot
/// displacement over those three slots, added to the latest estimate.
PlanePoint predict_next(const TrackState& state);

struct AreaOfInterest {
  double d0;
  double theta_max;
  double d_min;
};

/// Clamps a predicted location into the area: angle to [-theta_max, theta_max],
/// distance to [d_min, d0]; the radius is untouched when only the angle violates.
PlanePoint clamp_to_area(PlanePoint p, const AreaOfInterest& area);

struct TrackStepResult {
  LocationEstimate estimate;
  int pilots;
};

/// Reduced-overhead epoch: 4 direction beams at level L_t-3 around the
/// prediction, tree descent to L_t, then 4 last-level focal areas around the
/// predicted distance.
TrackStepResult track_step(const CompiledScenario& sc, TrackState& state,
                           const RxGroundTruth& rx_now, std::mt19937_64& rng);

struct EpochRecord {
  int slot;
  PlanePoint truth;
  PlanePoint estimate;
  double error;
  int pilots;
};

struct TrackRunResult {
  std::vector<EpochRecord> epochs;
};

/// Bootstraps with three full localizations, then runs track_step per slot.
TrackRunResult run_track(const CompiledScenario& sc, const Trajectory& traj,
                         std::mt19937_64& rng);

}  // namespace hbloc
