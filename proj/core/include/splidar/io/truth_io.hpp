#pragma once

#include <filesystem>

#include "splidar/sim/plan.hpp"

namespace splidar::io {

/// Per-pixel simulation ground truth as CSV: one row per pixel with the
/// arrival/gated/recorded counts of every photon source, for offline
/// analysis and exact-metrics evaluation.
void write_truth(const std::filesystem::path& path, const sim::SimulatedTruth& truth);
sim::SimulatedTruth read_truth(const std::filesystem::path& path);

}  // namespace splidar::io
