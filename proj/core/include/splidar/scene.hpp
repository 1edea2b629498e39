#pragma once

#include <cstdint>

#include "splidar/raster.hpp"

namespace splidar {

/// Target description. depth is relative to base_distance_m (meters, signed);
/// pixels with reflectivity exactly 0 are empty (sky): they return no signal
/// and their depth is ignored.
struct SceneModel {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  double base_distance_m = 0.0;
  Raster<float> depth_m;
  Raster<float> reflectivity;

  bool empty_pixel(std::size_t i) const { return reflectivity[i] == 0.0f; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  std::size_t nonempty_count() const;

  /// Throws InputError on shape mismatch, non-finite or out-of-range values.
  void validate() const;
};

}  // namespace splidar
