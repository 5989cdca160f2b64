#pragma once

#include <vector>

namespace hbloc {

struct CdfPoint {
  double error;
  double fraction;
};

/// Standard empirical CDF: sorted abscissae, duplicates collapsed to the
/// highest cumulative fraction; the last point is (max error, 1).
std::vector<CdfPoint> empirical_cdf(std::vector<double> errors);

/// Monte-Carlo aggregate over localization errors.
struct ErrorStats {
  std::size_t n = 0;
  double mean = 0.0;
  double max = 0.0;
  double p999 = 0.0;  // 99.9th percentile, nearest rank
  double success_probability = 0.0;
  double mean_pilots = 0.0;
  double resolution = 0.0;  // success threshold the probability was computed against
  std::vector<double> sorted_errors;

  std::vector<CdfPoint> cdf() const { return empirical_cdf(sorted_errors); }
  double percentile(double p) const;  // nearest rank, p in (0, 100]

  static ErrorStats from(std::vector<double> errors, const std::vector<int>& pilot_counts,
                         double resolution);
};

}  // namespace hbloc
