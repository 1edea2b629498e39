#include "splidar/recon/quality.hpp"

#include <cmath>

namespace splidar::recon {

namespace {
void check_shape(const DepthEstimate& est, const SceneModel& truth) {
  if (est.depth_m.width != truth.width || est.depth_m.height != truth.height)
    throw InputError("depth quality: estimate and truth dimensions differ");
}
}  // namespace

double depth_rmse(const DepthEstimate& estimate, const SceneModel& truth) {
  check_shape(estimate, truth);
  double se = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < truth.pixel_count(); ++p) {
    if (!estimate.valid_mask.data[p] || truth.empty_pixel(p)) continue;
    double d = static_cast<double>(estimate.depth_m.data[p]) - truth.depth_m.data[p];
    se += d * d;
    ++n;
  }
  if (n == 0) throw InputError("depth quality: no valid non-empty pixels to evaluate");
  return std::sqrt(se / static_cast<double>(n));
}

double psnr(const DepthEstimate& estimate, const SceneModel& truth, double depth_range_m) {
  if (!(depth_range_m > 0.0)) throw InputError("psnr: depth range must be > 0");
  const double rmse = depth_rmse(estimate, truth);
  if (rmse <= 0.0) return 99.0;
  return std::min(99.0, 20.0 * std::log10(depth_range_m / rmse));
}

double fraction_within(const DepthEstimate& estimate, const SceneModel& truth,
                       double tolerance_m) {
  check_shape(estimate, truth);
  std::size_t hit = 0, n = 0;
  for (std::size_t p = 0; p < truth.pixel_count(); ++p) {
    if (truth.empty_pixel(p)) continue;
    ++n;
    double d = static_cast<double>(estimate.depth_m.data[p]) - truth.depth_m.data[p];
    if (std::abs(d) <= tolerance_m) ++hit;
  }
  if (n == 0) throw InputError("depth quality: scene has no non-empty pixels");
  return static_cast<double>(hit) / static_cast<double>(n);
}

}  // namespace splidar::recon
