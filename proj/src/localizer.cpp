#include "hbloc/localizer.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace hbloc {

RxGroundTruth RxGroundTruth::polar(double theta, double distance) {
  if (!(distance > 0.0)) throw std::domain_error("RX distance must be positive");
  if (!(std::abs(theta) < std::numbers::pi / 2.0))
    throw std::domain_error("RX angle must satisfy |theta| < pi/2");
  return RxGroundTruth{theta, distance};
}

int SearchTrace::pilot_count() const {
  int total = 0;
  for (const auto& step : steps) total += static_cast<int>(step.candidates.size());
  return total;
}

nlohmann::json SearchTrace::to_json_lines() const {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& step : steps) {
    for (std::size_t i = 0; i < step.candidates.size(); ++i) {
      nlohmann::json rec = {{"phase", step.phase},
                            {"level", step.level},
                            {"index", step.candidates[i]},
                            {"chosen", step.chosen}};
      if (i < step.powers_w.size())
        rec["power_w"] = step.powers_w[i];
      else
        rec["power_w"] = nullptr;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

double measure(const FocusedBeam& beam, const RxGroundTruth& rx, const ReceiverAperture& aperture,
               const NoiseModel& noise, std::mt19937_64& rng) {
  const double p_r = received_power(power_density(beam, rx.cartesian()), aperture);
  if (noise.kind == NoiseModel::Kind::none || noise.pn_watts == 0.0) return p_r;

  // Noncoherent detection: energy of the signal plus circularly-symmetric
  // complex Gaussian noise with E[|n|^2] = P_n. Expected measurement P_r + P_n.
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> component(0.0, std::sqrt(noise.pn_watts / 2.0));
  const double amp = std::sqrt(p_r);
  const double phi = phase_dist(rng);
  const double re = amp * std::cos(phi) + component(rng);
  const double im = amp * std::sin(phi) + component(rng);
  return re * re + im * im;
}

FocusedBeam direction_beam(const DirectionCodeword& cw, double tx_power_w, double k) {
  return FocusedBeam{tx_power_w, cw.w, cw.w, cw.steer_rad, FocalSetting::collimated(), k};
}

FocusedBeam focus_beam(const FocusCodeword& cw, double steer_rad, double tx_power_w, double k) {
  // A steered focal area must keep the focal distance and major radius of the
  // broadside design; widening the horizontal footprint by 1/cos undoes the
  // aperture projection that would otherwise pull the focal point inward.
  const double c = std::cos(steer_rad);
  if (!(std::abs(c) > 1e-12)) throw std::domain_error("focus_beam: grazing steering angle");
  return FocusedBeam{tx_power_w, cw.wx / c, cw.wx, steer_rad, FocalSetting::focused(cw.f0), k};
}

namespace {

// Argmax over measured powers; ties go to the lowest codeword index.
int argmax_index(const std::vector<int>& candidates, const std::vector<double>& powers) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < powers.size(); ++i)
    if (powers[i] > powers[best]) best = i;
  return candidates[best];
}

}  // namespace

Phase1Result phase1(const CompiledScenario& sc, const RxGroundTruth& rx, SearchMode mode,
                    std::mt19937_64& rng, SearchTrace& trace) {
  const DirectionCodebook& cb = sc.direction_cb;
  const double u_true = std::sin(rx.theta);
  const double k = sc.cfg.k();

  std::vector<int> candidates = entry_codewords(cb, sc.cfg.entry_level, sc.cfg.theta_max);
  int chosen = candidates.front();
  for (int level = sc.cfg.entry_level; level <= cb.depth(); ++level) {
    SearchStep step{1, level, candidates, {}, 0};
    if (mode == SearchMode::ideal) {
      // Winner is the codeword whose sine-space cell contains the true
      // direction; ties (cell edges) go to the lower index.
      const double h = cell_halfwidth(level);
      chosen = candidates.back();
      for (int idx : candidates) {
        if (u_true <= cb.at(level, idx).u_center + h) {
          chosen = idx;
          break;
        }
      }
    } else {
      step.powers_w.reserve(candidates.size());
      for (int idx : candidates) {
        const FocusedBeam beam = direction_beam(cb.at(level, idx), sc.cfg.tx_power_w, k);
        step.powers_w.push_back(measure(beam, rx, sc.rx_aperture, sc.cfg.noise, rng));
      }
      chosen = argmax_index(candidates, step.powers_w);
    }
    step.chosen = chosen;
    trace.steps.push_back(std::move(step));
    if (level < cb.depth()) {
      const auto [lo, hi] = children(chosen);
      candidates = {lo, hi};
    }
  }
  return Phase1Result{cb.at(cb.depth(), chosen).steer_rad, chosen};
}

Phase2Result phase2(const CompiledScenario& sc, double theta_hat, const RxGroundTruth& rx,
                    SearchMode mode, std::mt19937_64& rng, SearchTrace& trace) {
  const FocusCodebook& cb = sc.focus_cb;
  const double k = sc.cfg.k();

  std::vector<int> candidates = {1, 2};
  int chosen = 1;
  for (int level = 1; level <= cb.depth(); ++level) {
    SearchStep step{2, level, candidates, {}, 0};
    if (mode == SearchMode::ideal) {
      chosen = candidates.front();
      double best = std::abs(cb.at(level, chosen).d_f - rx.distance);
      for (int idx : candidates) {
        const double gap = std::abs(cb.at(level, idx).d_f - rx.distance);
        if (gap < best) {
          best = gap;
          chosen = idx;
        }
      }
    } else {
      step.powers_w.reserve(candidates.size());
      for (int idx : candidates) {
        const FocusedBeam beam = focus_beam(cb.at(level, idx), theta_hat, sc.cfg.tx_power_w, k);
        step.powers_w.push_back(measure(beam, rx, sc.rx_aperture, sc.cfg.noise, rng));
      }
      chosen = argmax_index(candidates, step.powers_w);
    }
    step.chosen = chosen;
    trace.steps.push_back(std::move(step));
    if (level < cb.depth()) {
      const auto [lo, hi] = children(chosen);
      candidates = {lo, hi};
    }
  }
  return Phase2Result{cb.at(cb.depth(), chosen).d_f, chosen};
}

LocalizeResult localize(const CompiledScenario& sc, const RxGroundTruth& rx, SearchMode mode,
                        std::mt19937_64& rng) {
  if (rx.distance < sc.cfg.d_min || rx.distance > sc.cfg.d0 ||
      std::abs(rx.theta) > sc.cfg.theta_max)
    throw ConfigError("RX lies outside the area of interest");

  SearchTrace trace;
  double theta_hat;
  if (mode == SearchMode::perfect_phase1) {
    theta_hat = rx.theta;
  } else {
    theta_hat = phase1(sc, rx, mode, rng, trace).theta_hat;
  }
  const Phase2Result ranging =
      phase2(sc, theta_hat, rx, mode == SearchMode::perfect_phase1 ? SearchMode::measured : mode,
             rng, trace);

  const PlanePoint pos{ranging.d_hat * std::sin(theta_hat), ranging.d_hat * std::cos(theta_hat)};
  const PlanePoint truth = rx.cartesian();
  const double error = std::hypot(pos.x - truth.x, pos.z - truth.z);
  return LocalizeResult{LocationEstimate{theta_hat, ranging.d_hat, pos, error}, std::move(trace)};
}

bool is_success(double error_m, double resolution_m) { return error_m <= resolution_m; }

}  // namespace hbloc
