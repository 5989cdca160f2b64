#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hbloc/simharness.hpp"

namespace hbloc {

/// Shortest round-trippable decimal form; keeps text outputs byte-stable.
std::string format_double(double v);

std::string cdf_csv(const ErrorStats& stats);
std::string noise_sweep_csv(const std::vector<SweepPoint>& points);
std::string level_sweep_csv(const std::vector<LevelSweepEntry>& entries);
std::string track_csv(const TrackCampaignResult& result);

/// JSON summary with the resolved config echoed for provenance.
nlohmann::json summary_json(const Scenario& cfg, const ErrorStats& stats, int n,
                            std::uint64_t seed);

/// Writes text to a file; throws std::ios_base::failure on I/O errors.
void write_file(const std::string& path, const std::string& content);

extern const char* const kVersion;

}  // namespace hbloc
