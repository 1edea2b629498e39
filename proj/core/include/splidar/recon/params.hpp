#pragma once

#include <cstdint>

#include "splidar/common.hpp"
#include "splidar/raster.hpp"

namespace splidar::recon {

/// Depth reconstruction knobs shared by the matched-filter, censoring and
/// TV stages. censor_time_radius_ps <= 0 means "derive from the system
/// jitter" (2 sigma).
struct ReconParams {
  double tv_lambda = 0.1;
  Picos bin_width_ps = 100;
  int censor_window = 2;            // spatial half-width in pixels
  Picos censor_time_radius_ps = 0;  // 0 -> 2 * system jitter sigma
  double significance_alpha = 1e-3;
  std::size_t max_iters = 200;
  double rel_tol = 1e-6;

  void validate() const {
    if (!(tv_lambda >= 0.0)) throw InputError("ReconParams: tv_lambda must be >= 0");
    if (bin_width_ps <= 0) throw InputError("ReconParams: bin_width must be > 0");
    if (censor_window < 0) throw InputError("ReconParams: censor_window must be >= 0");
    if (!(significance_alpha > 0.0 && significance_alpha < 1.0))
      throw InputError("ReconParams: significance_alpha must be in (0, 1)");
    if (max_iters == 0) throw InputError("ReconParams: max_iters must be > 0");
    if (!(rel_tol >= 0.0)) throw InputError("ReconParams: rel_tol must be >= 0");
  }
};

/// Relative depth map plus per-pixel diagnostics. Depth is meaningful only
/// where valid_mask is true; confidence is 0 elsewhere.
struct DepthEstimate {
  Raster<float> depth_m;
  Raster<float> confidence;
  Raster<std::uint8_t> valid_mask;

  static DepthEstimate zeros(std::uint32_t width, std::uint32_t height) {
    DepthEstimate e;
    e.depth_m = Raster<float>(width, height, 0.0f);
    e.confidence = Raster<float>(width, height, 0.0f);
    e.valid_mask = Raster<std::uint8_t>(width, height, 0);
    return e;
  }
  std::size_t valid_count() const {
    std::size_t n = 0;
    for (auto v : valid_mask.data) n += v != 0;
    return n;
  }
};

/// Maps fold time to depth: depth(t) = depth_m + circ_diff(t, fold_ps) / k
/// where k = 2e12 / c picoseconds per meter of one-way depth.
struct DepthAnchor {
  Picos fold_ps = 0;
  double depth_m = 0.0;
};

/// Picoseconds of round-trip delay per meter of depth.
inline double ps_per_meter() { return 2.0 * kPsPerSecond / kSpeedOfLight; }

inline double depth_from_fold(Picos fold_time, const DepthAnchor& anchor, Picos period) {
  return anchor.depth_m +
         static_cast<double>(circ_diff_ps(fold_time, anchor.fold_ps, period)) / ps_per_meter();
}

inline Picos fold_from_depth(double depth, const DepthAnchor& anchor, Picos period) {
  double delta = (depth - anchor.depth_m) * ps_per_meter();
  return fold_ps(anchor.fold_ps + static_cast<Picos>(std::llround(delta)), period);
}

}  // namespace splidar::recon
