#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hbloc {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Bad configuration (unknown preset, invalid geometry, ...). Maps to CLI exit 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double wavelength_m(double carrier_hz) { return kSpeedOfLight / carrier_hz; }
inline double wavenumber_rad_m(double carrier_hz) {
  return 2.0 * std::numbers::pi / wavelength_m(carrier_hz);
}

}  // namespace hbloc
