#pragma once

#include "splidar/recon/params.hpp"
#include "splidar/scene.hpp"

namespace splidar::recon {

/// RMSE of estimated vs true depth over valid and non-empty pixels.
/// Throws InputError when no pixel is evaluable.
double depth_rmse(const DepthEstimate& estimate, const SceneModel& truth);

/// 20*log10(depth_range / RMSE) over valid and non-empty pixels, capped at
/// 99 dB (the cap stands in for the infinite PSNR of an exact match).
double psnr(const DepthEstimate& estimate, const SceneModel& truth, double depth_range_m);

/// Fraction of non-empty pixels whose absolute depth error is within
/// tolerance. Every non-empty pixel counts; the depth raster is used as-is,
/// so in-painted values stand in for pixels with no detection.
double fraction_within(const DepthEstimate& estimate, const SceneModel& truth,
                       double tolerance_m);

}  // namespace splidar::recon
