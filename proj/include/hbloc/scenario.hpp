#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hbloc/codebook.hpp"

namespace hbloc {

struct NoiseModel {
  enum class Kind { none, awgn };
  Kind kind = Kind::none;
  double pn_watts = 0.0;  // average AWGN power at the RX

  static NoiseModel none() { return NoiseModel{Kind::none, 0.0}; }
  static NoiseModel awgn(double pn_watts);
  static NoiseModel awgn_dbm(double pn_dbm) { return awgn(dbm_to_watts(pn_dbm)); }
};

enum class SearchMode { measured, ideal, perfect_phase1 };

std::string to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& name);

/// Motion parameters for the tracking campaigns. The per-slot speed is drawn
/// uniformly from [speed_min, speed_max] (meters per timeslot).
struct MotionConfig {
  double speed_min = 0.05;
  double speed_max = 0.25;
  double path_length_m = 3.0;
};

/// Full experiment configuration. Angles in radians, powers in watts; the
/// dBm/degree forms appear only in config files and reports.
struct Scenario {
  std::string name;
  double d0 = 5.0;             // max distance in the area of interest (m)
  double theta_max = 0.0;      // half-angle of the area (rad)
  double d_min = 0.1;          // min distance (m)
  double carrier_hz = 150e9;
  int levels_direction = 10;   // L_t; array size is 2^L_t
  int levels_focus = 6;        // L_r
  int entry_level = 4;
  int rbfr_freeze_level = 7;
  double alpha = 0.3;
  double tx_power_w = 1.0;
  double rx_gain = 100.0;      // linear
  NoiseModel noise = NoiseModel::none();
  CodebookKind codebook_kind = CodebookKind::bfr;  // bfr or rbfr
  SearchMode mode = SearchMode::measured;
  MotionConfig motion;

  double lambda() const { return wavelength_m(carrier_hz); }
  double k() const { return wavenumber_rad_m(carrier_hz); }
  void validate() const;  // throws ConfigError

  nlohmann::json to_json() const;
  static Scenario from_json(const nlohmann::json& j);  // unknown keys rejected
  static Scenario preset(const std::string& name);
  static bool is_preset(const std::string& name);
};

/// Scenario with its codebooks built and the receive aperture resolved.
struct CompiledScenario {
  Scenario cfg;
  DirectionCodebook direction_cb;  // Bfr or R-bfr per cfg.codebook_kind
  FocusCodebook focus_cb;
  ReceiverAperture rx_aperture{1.0, 0.0};

  /// Ranging resolution used for the success criterion: r_max at the last
  /// beam-focusing level.
  double resolution() const { return focus_cb.resolution(); }
};

CompiledScenario compile(const Scenario& cfg);

}  // namespace hbloc
