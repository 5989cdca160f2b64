#pragma once

#include <numbers>

#include "hbloc/units.hpp"

namespace hbloc {

/// Point on the xz-plane: x transverse, z along broadside from the TX panel.
struct PlanePoint {
  double x = 0.0;
  double z = 0.0;
};

/// Focal setting of a beam: a finite intended focal distance (beam-focusing)
/// or the collimated limit (beam-forming, focal distance pushed to infinity).
class FocalSetting {
 public:
  static FocalSetting collimated() { return FocalSetting(true, 0.0); }
  static FocalSetting focused(double f0_m) {
    if (!(f0_m > 0.0)) throw std::domain_error("focal distance must be positive");
    return FocalSetting(false, f0_m);
  }

  bool is_collimated() const { return collimated_; }
  double f0() const {
    if (collimated_) throw std::domain_error("collimated beam has no finite focal distance");
    return f0_;
  }

 private:
  FocalSetting(bool collimated, double f0) : collimated_(collimated), f0_(f0) {}
  bool collimated_;
  double f0_;
};

/// Transmit-side description of one focused (or collimated) Gaussian beam.
struct FocusedBeam {
  double power_w;     // P_t
  double wx;          // horizontal footprint radius on the panel (m)
  double wy;          // vertical footprint radius (m)
  double steer_rad;   // steering angle on the xz-plane, 0 = broadside
  FocalSetting focus; // intended focal distance or collimated
  double k;           // wavenumber (rad/m)

  void validate() const;
};

/// Receive antenna described by gain and the matching effective aperture.
struct ReceiverAperture {
  double gain;        // linear
  double aperture_m2; // G * lambda^2 / (4 pi)

  static ReceiverAperture from_gain(double gain_linear, double lambda_m);
};

/// Derived focal ellipse of one beam: focal distance, 3dB major radius,
/// Rayleigh length, plus the (f0, w) the ellipse was derived from.
struct FocusGeometry {
  double d_f;
  double r_max;
  double z_r;
  double f0;
  double w;
};

/// Design parameters (intended focal distance, footprint) that realize a
/// requested focal ellipse.
struct FocusDesign {
  double f0;
  double wx;
};

double rayleigh_length(double w, double k);
double focal_distance(double f0, double z_r);
double focal_major_radius(double f0, double z_r);
FocusGeometry focus_geometry(double f0, double w, double k);
FocusDesign invert_focus(double d_f, double r_max, double k);
double beamwidth_3db(double w, double lambda_m);
double lis_footprint(double wy, double theta_i_rad);

/// Power density S_r(x, z) of the beam at a point on the xz-plane (W/m^2).
double power_density(const FocusedBeam& beam, PlanePoint p);

/// Power captured by the receive aperture from a local power density (W).
double received_power(double density_w_m2, const ReceiverAperture& rx);

}  // namespace hbloc
