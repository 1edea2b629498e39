#include "splidar/scene.hpp"

#include <cmath>

#include "splidar/common.hpp"

namespace splidar {

std::size_t SceneModel::nonempty_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < reflectivity.size(); ++i)
    if (!empty_pixel(i)) ++n;
  return n;
}

void SceneModel::validate() const {
  if (width == 0 || height == 0) throw InputError("SceneModel: empty raster");
  if (!(base_distance_m > 0.0)) throw InputError("SceneModel: base distance must be > 0");
  if (depth_m.width != width || depth_m.height != height ||
      reflectivity.width != width || reflectivity.height != height)
    throw InputError("SceneModel: raster dimensions disagree");
  for (std::size_t i = 0; i < reflectivity.size(); ++i) {
    float r = reflectivity[i];
    if (!(r >= 0.0f) || r > 1.0f) throw InputError("SceneModel: reflectivity must be in [0, 1]");
    if (r > 0.0f) {
      float d = depth_m[i];
      if (!std::isfinite(d)) throw InputError("SceneModel: depth must be finite on non-empty pixels");
      if (base_distance_m + d <= 0.0) throw InputError("SceneModel: base + depth must stay > 0");
    }
  }
}

}  // namespace splidar
