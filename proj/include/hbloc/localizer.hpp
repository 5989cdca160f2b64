#pragma once

#include <random>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hbloc/scenario.hpp"

namespace hbloc {

struct RxGroundTruth {
  double theta;     // angle from broadside (rad)
  double distance;  // distance from TX center (m)

  PlanePoint cartesian() const {
    return PlanePoint{distance * std::sin(theta), distance * std::cos(theta)};
  }
  static RxGroundTruth polar(double theta, double distance);
};

/// One level of the binary-tree descent: which codewords were probed, what the
/// RX measured, and which codeword won. phase is 1 (direction) or 2 (range).
struct SearchStep {
  int phase;
  int level;
  std::vector<int> candidates;
  std::vector<double> powers_w;  // empty in ideal mode (no pilots evaluated)
  int chosen;
};

struct SearchTrace {
  std::vector<SearchStep> steps;

  int pilot_count() const;
  nlohmann::json to_json_lines() const;  // array of per-pilot records
};

struct LocationEstimate {
  double theta_hat;
  double d_hat;
  PlanePoint position;
  double error;  // Euclidean distance to ground truth (m)
};

/// One pilot measurement: noiseless received power, or noncoherent detection
/// of the signal in circularly-symmetric complex AWGN of average power P_n.
double measure(const FocusedBeam& beam, const RxGroundTruth& rx, const ReceiverAperture& aperture,
               const NoiseModel& noise, std::mt19937_64& rng);

struct Phase1Result {
  double theta_hat;
  int final_index;
};

/// Hierarchical beam-training: argmax descent over the direction codebook from
/// entry_level to the last level.
Phase1Result phase1(const CompiledScenario& sc, const RxGroundTruth& rx, SearchMode mode,
                    std::mt19937_64& rng, SearchTrace& trace);

struct Phase2Result {
  double d_hat;
  int final_index;
};

/// Hierarchical ranging: argmax descent over the focus codebook with beams
/// steered along theta_hat.
Phase2Result phase2(const CompiledScenario& sc, double theta_hat, const RxGroundTruth& rx,
                    SearchMode mode, std::mt19937_64& rng, SearchTrace& trace);

struct LocalizeResult {
  LocationEstimate estimate;
  SearchTrace trace;
};

LocalizeResult localize(const CompiledScenario& sc, const RxGroundTruth& rx, SearchMode mode,
                        std::mt19937_64& rng);

/// Estimation counts as successful when the error does not exceed the ranging
/// resolution (boundary inclusive).
bool is_success(double error_m, double resolution_m);

/// Beam realizations used by the two phases.
FocusedBeam direction_beam(const DirectionCodeword& cw, double tx_power_w, double k);
FocusedBeam focus_beam(const FocusCodeword& cw, double steer_rad, double tx_power_w, double k);

}  // namespace hbloc
