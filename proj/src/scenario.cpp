#include "hbloc/scenario.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace hbloc {

NoiseModel NoiseModel::awgn(double pn_watts) {
  if (!(pn_watts >= 0.0)) throw ConfigError("AWGN power must be non-negative");
  return NoiseModel{Kind::awgn, pn_watts};
}

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::measured: return "measured";
    case SearchMode::ideal: return "ideal";
    case SearchMode::perfect_phase1: return "perfect-phase1";
  }
  throw ConfigError("unknown search mode");
}

SearchMode search_mode_from_string(const std::string& name) {
  if (name == "measured") return SearchMode::measured;
  if (name == "ideal") return SearchMode::ideal;
  if (name == "perfect-phase1" || name == "perfect_phase1") return SearchMode::perfect_phase1;
  throw ConfigError("unknown search mode: " + name);
}

void Scenario::validate() const {
  if (!(d0 > 0.0) || !(d_min > 0.0) || !(d_min < d0))
    throw ConfigError("require 0 < d_min < d0");
  if (!(theta_max > 0.0) || !(theta_max < std::numbers::pi / 2.0))
    throw ConfigError("theta_max must lie in (0, pi/2)");
  if (!(carrier_hz > 0.0)) throw ConfigError("carrier frequency must be positive");
  if (levels_direction < 1 || levels_direction > 24)
    throw ConfigError("levels_direction out of range");
  if (levels_focus < 1) throw ConfigError("levels_focus must be >= 1");
  if (entry_level < 1 || entry_level > levels_direction)
    throw ConfigError("entry_level out of range");
  if (rbfr_freeze_level < 1 || rbfr_freeze_level > levels_direction)
    throw ConfigError("rbfr_freeze_level out of range");
  if (!(tx_power_w > 0.0) || !(rx_gain > 0.0)) throw ConfigError("powers must be positive");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (codebook_kind == CodebookKind::bfc)
    throw ConfigError("scenario codebook must be bfr or rbfr");
  if (!(motion.speed_min > 0.0) || !(motion.speed_max >= motion.speed_min))
    throw ConfigError("invalid motion speed range");
  if (!(motion.path_length_m > 0.0)) throw ConfigError("path length must be positive");
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json noise_j;
  if (noise.kind == NoiseModel::Kind::none)
    noise_j = "none";
  else
    noise_j = nlohmann::json{{"awgn_dbm", watts_to_dbm(noise.pn_watts)}};
  return {
      {"name", name},
      {"d0_m", d0},
      {"theta_max_deg", rad_to_deg(theta_max)},
      {"d_min_m", d_min},
      {"carrier_ghz", carrier_hz / 1e9},
      {"levels_direction", levels_direction},
      {"levels_focus", levels_focus},
      {"entry_level", entry_level},
      {"rbfr_freeze_level", rbfr_freeze_level},
      {"alpha", alpha},
      {"tx_power_dbm", watts_to_dbm(tx_power_w)},
      {"rx_gain_db", 10.0 * std::log10(rx_gain)},
      {"codebook", to_string(codebook_kind)},
      {"mode", to_string(mode)},
      {"noise", noise_j},
      {"track",
       {{"speed_min_m_per_slot", motion.speed_min},
        {"speed_max_m_per_slot", motion.speed_max},
        {"path_length_m", motion.path_length_m}}},
  };
}

Scenario Scenario::from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "name", "d0_m", "theta_max_deg", "d_min_m", "carrier_ghz", "levels_direction",
      "levels_focus", "entry_level", "rbfr_freeze_level", "alpha", "tx_power_dbm",
      "rx_gain_db", "codebook", "mode", "noise", "track"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key: " + key);

  Scenario s;
  s.name = j.value("name", "custom");
  s.d0 = j.value("d0_m", s.d0);
  s.theta_max = deg_to_rad(j.value("theta_max_deg", 25.0));
  s.d_min = j.value("d_min_m", s.d_min);
  s.carrier_hz = j.value("carrier_ghz", 150.0) * 1e9;
  s.levels_direction = j.value("levels_direction", s.levels_direction);
  s.levels_focus = j.value("levels_focus", s.levels_focus);
  s.entry_level = j.value("entry_level", s.entry_level);
  s.rbfr_freeze_level = j.value("rbfr_freeze_level", s.rbfr_freeze_level);
  s.alpha = j.value("alpha", s.alpha);
  s.tx_power_w = dbm_to_watts(j.value("tx_power_dbm", 30.0));
  s.rx_gain = db_to_linear(j.value("rx_gain_db", 20.0));
  s.codebook_kind = codebook_kind_from_string(j.value("codebook", "bfr"));
  s.mode = search_mode_from_string(j.value("mode", "measured"));

  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    if (n.is_string() && n.get<std::string>() == "none") {
      s.noise = NoiseModel::none();
    } else if (n.is_object() && n.contains("awgn_dbm") && n.size() == 1) {
      s.noise = NoiseModel::awgn_dbm(n.at("awgn_dbm").get<double>());
    } else {
      throw ConfigError("noise must be \"none\" or {\"awgn_dbm\": <value>}");
    }
  }
  if (j.contains("track")) {
    static const std::set<std::string> track_known = {"speed_min_m_per_slot",
                                                      "speed_max_m_per_slot", "path_length_m"};
    for (const auto& [key, value] : j.at("track").items())
      if (!track_known.contains(key)) throw ConfigError("unknown track key: " + key);
    s.motion.speed_min = j.at("track").value("speed_min_m_per_slot", s.motion.speed_min);
    s.motion.speed_max = j.at("track").value("speed_max_m_per_slot", s.motion.speed_max);
    s.motion.path_length_m = j.at("track").value("path_length_m", s.motion.path_length_m);
  }
  s.validate();
  return s;
}

Scenario Scenario::preset(const std::string& name) {
  Scenario s;
  s.name = name;
  s.theta_max = deg_to_rad(25.0);
  s.tx_power_w = dbm_to_watts(30.0);
  s.rx_gain = db_to_linear(20.0);
  if (name == "scenario1") {
    s.d0 = 5.0;
  } else if (name == "scenario2") {
    s.d0 = 10.0;
  } else if (name == "scenario1-track") {
    s.d0 = 5.0;
  } else if (name == "scenario2-track") {
    s.d0 = 10.0;
    s.levels_direction = 11;
    s.levels_focus = 7;
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  s.validate();
  return s;
}

bool Scenario::is_preset(const std::string& name) {
  return name == "scenario1" || name == "scenario2" || name == "scenario1-track" ||
         name == "scenario2-track";
}

CompiledScenario compile(const Scenario& cfg) {
  cfg.validate();
  CompiledScenario out;
  out.cfg = cfg;
  const auto geom =
      ArrayGeometry::half_wavelength(1 << cfg.levels_direction, cfg.carrier_hz);
  DirectionCodebook bfr = build_bfr(geom, cfg.levels_direction);
  out.direction_cb = (cfg.codebook_kind == CodebookKind::rbfr)
                         ? build_rbfr(bfr, cfg.rbfr_freeze_level)
                         : std::move(bfr);
  out.focus_cb = build_bfc(cfg.d0, cfg.alpha, cfg.levels_focus, cfg.k());
  out.rx_aperture = ReceiverAperture::from_gain(cfg.rx_gain, cfg.lambda());
  return out;
}

}  // namespace hbloc
