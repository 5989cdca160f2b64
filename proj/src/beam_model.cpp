#include "hbloc/beam_model.hpp"

#include <cmath>

namespace hbloc {

namespace {
inline double sq(double v) { return v * v; }
}  // namespace

void FocusedBeam::validate() const {
  if (!(power_w > 0.0)) throw std::domain_error("transmit power must be positive");
  if (!(wx > 0.0) || !(wy > 0.0)) throw std::domain_error("footprint radii must be positive");
  if (!(k > 0.0)) throw std::domain_error("wavenumber must be positive");
  if (!(std::abs(steer_rad) < std::numbers::pi / 2.0))
    throw std::domain_error("steering angle must satisfy |theta_r| < pi/2");
}

ReceiverAperture ReceiverAperture::from_gain(double gain_linear, double lambda_m) {
  if (!(gain_linear > 0.0)) throw std::domain_error("receiver gain must be positive");
  if (!(lambda_m > 0.0)) throw std::domain_error("wavelength must be positive");
  return ReceiverAperture{gain_linear, gain_linear * sq(lambda_m) / (4.0 * std::numbers::pi)};
}

double rayleigh_length(double w, double k) {
  if (!(w > 0.0) || !(k > 0.0)) throw std::domain_error("rayleigh_length: inputs must be positive");
  return k * sq(w) / 2.0;
}

double focal_distance(double f0, double z_r) {
  if (!(f0 > 0.0) || !(z_r > 0.0)) throw std::domain_error("focal_distance: inputs must be positive");
  return f0 / (sq(f0 / z_r) + 1.0);
}

double focal_major_radius(double f0, double z_r) {
  if (!(f0 > 0.0) || !(z_r > 0.0))
    throw std::domain_error("focal_major_radius: inputs must be positive");
  return focal_distance(f0, z_r) * (f0 / z_r);
}

FocusGeometry focus_geometry(double f0, double w, double k) {
  const double z_r = rayleigh_length(w, k);
  return FocusGeometry{focal_distance(f0, z_r), focal_major_radius(f0, z_r), z_r, f0, w};
}

FocusDesign invert_focus(double d_f, double r_max, double k) {
  if (!(d_f > 0.0) || !(r_max > 0.0) || !(k > 0.0))
    throw std::domain_error("invert_focus: inputs must be positive");
  const double f0 = d_f * (sq(r_max / d_f) + 1.0);
  const double wx = std::sqrt(2.0 * (sq(r_max) + sq(d_f)) / (k * r_max));
  return FocusDesign{f0, wx};
}

double beamwidth_3db(double w, double lambda_m) {
  if (!(w > 0.0) || !(lambda_m > 0.0))
    throw std::domain_error("beamwidth_3db: inputs must be positive");
  return std::sqrt(2.0 * std::numbers::ln2) * lambda_m / (std::numbers::pi * w);
}

double lis_footprint(double wy, double theta_i_rad) {
  if (!(wy > 0.0)) throw std::domain_error("lis_footprint: footprint must be positive");
  if (!(std::abs(theta_i_rad) < std::numbers::pi / 2.0))
    throw std::domain_error("lis_footprint: grazing incidence");
  return wy / std::cos(theta_i_rad);
}

double power_density(const FocusedBeam& beam, PlanePoint p) {
  beam.validate();
  if (!(p.z >= 0.0)) throw std::domain_error("power_density: z must be non-negative");

  const double c = std::cos(beam.steer_rad);
  const double s = std::sin(beam.steer_rad);
  if (c == 0.0) throw std::domain_error("power_density: grazing steering angle");

  // z/f0, with the collimated limit taken exactly.
  const double zf = beam.focus.is_collimated() ? 0.0 : p.z / beam.focus.f0();

  const double ay = sq(1.0 - zf / c) + sq(2.0 * p.z / (beam.k * sq(beam.wy) * c));
  const double ax = sq(1.0 - zf / c) + sq(2.0 * p.z / (beam.k * sq(beam.wx) * c)) / sq(sq(c));
  const double exp_denom = sq(c - zf) + sq(2.0 * p.z / (beam.k * sq(beam.wx) * sq(c)));
  const double offset = p.x * c - p.z * s;  // transverse offset from the beam axis

  return 2.0 * beam.power_w / (std::numbers::pi * beam.wx * beam.wy) / std::sqrt(ay * ax) *
         std::exp(-2.0 * sq(offset) / (sq(beam.wx) * exp_denom));
}

double received_power(double density_w_m2, const ReceiverAperture& rx) {
  if (!(density_w_m2 >= 0.0)) throw std::domain_error("received_power: density must be >= 0");
  return density_w_m2 * rx.aperture_m2;
}

}  // namespace hbloc
