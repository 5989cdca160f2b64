#include "hbloc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hbloc {

std::vector<CdfPoint> empirical_cdf(std::vector<double> errors) {
  if (errors.empty()) throw std::invalid_argument("empirical_cdf: empty sample");
  std::sort(errors.begin(), errors.end());
  const double n = static_cast<double>(errors.size());
  std::vector<CdfPoint> cdf;
  cdf.reserve(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double fraction = static_cast<double>(i + 1) / n;
    if (!cdf.empty() && cdf.back().error == errors[i])
      cdf.back().fraction = fraction;
    else
      cdf.push_back(CdfPoint{errors[i], fraction});
  }
  return cdf;
}

double ErrorStats::percentile(double p) const {
  if (sorted_errors.empty()) throw std::invalid_argument("percentile: empty sample");
  if (!(p > 0.0) || p > 100.0) throw std::invalid_argument("percentile: p must be in (0, 100]");
  // the small slack keeps e.g. 0.999 * 1000 from rounding up to rank 1000
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted_errors.size()) - 1e-9));
  return sorted_errors[std::max<std::size_t>(rank, 1) - 1];
}

ErrorStats ErrorStats::from(std::vector<double> errors, const std::vector<int>& pilot_counts,
                            double resolution) {
  if (errors.empty()) throw std::invalid_argument("ErrorStats: empty sample");
  ErrorStats stats;
  stats.n = errors.size();
  stats.resolution = resolution;
  stats.mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(stats.n);
  stats.success_probability =
      static_cast<double>(std::count_if(errors.begin(), errors.end(),
                                        [&](double e) { return e <= resolution; })) /
      static_cast<double>(stats.n);
  if (!pilot_counts.empty())
    stats.mean_pilots = std::accumulate(pilot_counts.begin(), pilot_counts.end(), 0.0) /
                        static_cast<double>(pilot_counts.size());
  std::sort(errors.begin(), errors.end());
  stats.sorted_errors = std::move(errors);
  stats.max = stats.sorted_errors.back();
  stats.p999 = stats.percentile(99.9);
  return stats;
}

}  // namespace hbloc
