#include "splidar/io/scene_io.hpp"

#include <cstdio>

#include "splidar/common.hpp"
#include "splidar/io/atomic_file.hpp"
#include "splidar/io/kv.hpp"
#include "splidar/io/pfm.hpp"

namespace splidar::io {

SceneModel read_scene(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw InputError("scene directory not found: " + dir.string());
  SceneModel scene;
  scene.depth_m = read_pfm(dir / "depth.pfm");
  scene.reflectivity = read_pfm(dir / "reflectivity.pfm");
  scene.width = scene.depth_m.width;
  scene.height = scene.depth_m.height;

  bool have_base = false;
  std::uint32_t meta_w = 0, meta_h = 0;
  const auto meta_path = dir / "scene.toml";
  for (const auto& [key, value] : parse_kv_file(meta_path)) {
    if (key == "base_distance_m") {
      scene.base_distance_m = kv_double(key, value);
      have_base = true;
    } else if (key == "width") {
      meta_w = static_cast<std::uint32_t>(kv_uint(key, value));
    } else if (key == "height") {
      meta_h = static_cast<std::uint32_t>(kv_uint(key, value));
    } else {
      throw InputError(meta_path.string() + ": unknown key '" + key + "'");
    }
  }
  if (!have_base) throw InputError(meta_path.string() + ": missing base_distance_m");
  if (meta_w && meta_w != scene.width)
    throw InputError(meta_path.string() + ": width disagrees with depth.pfm");
  if (meta_h && meta_h != scene.height)
    throw InputError(meta_path.string() + ": height disagrees with depth.pfm");
  if (scene.reflectivity.width != scene.width || scene.reflectivity.height != scene.height)
    throw InputError(dir.string() + ": reflectivity.pfm dimensions disagree with depth.pfm");
  scene.validate();
  return scene;
}

void write_scene(const std::filesystem::path& dir, const SceneModel& scene) {
  scene.validate();
  std::filesystem::create_directories(dir);
  write_pfm(dir / "depth.pfm", scene.depth_m);
  write_pfm(dir / "reflectivity.pfm", scene.reflectivity);
  char base[48];
  std::snprintf(base, sizeof base, "%.17g", scene.base_distance_m);
  std::string meta;
  meta += std::string("base_distance_m = ") + base + "\n";
  meta += "width = " + std::to_string(scene.width) + "\n";
  meta += "height = " + std::to_string(scene.height) + "\n";
  atomic_write_text(dir / "scene.toml", meta);
}

}  // namespace splidar::io
