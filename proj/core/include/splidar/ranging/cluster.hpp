#pragma once

#include <span>

#include "splidar/common.hpp"

namespace splidar::ranging {

/// Densest-window scan result. When no window is significant, `detected` is
/// false and the fields still describe the best candidate found.
struct ClusterDetection {
  bool detected = false;
  Picos residue_ps = 0;   // circular mean of the in-window times
  std::size_t count = 0;  // events inside the best window
  double p_value = 1.0;   // Poisson tail, Bonferroni-corrected for the scan
};

/// Slides a circular window of width window_ps across event-anchored
/// positions over fold times in [0, period). The best window's count is
/// tested against Poisson(floor_per_window) with a period/window Bonferroni
/// factor; floor_per_window < 0 derives the floor from the total event count
/// (uniform-background assumption).
ClusterDetection detect_cluster(std::span<const Picos> folded, Picos period, Picos window_ps,
                                double floor_per_window, double alpha = 1e-3);

}  // namespace splidar::ranging
