#pragma once

#include <filesystem>

#include "splidar/scene.hpp"

namespace splidar::io {

/// Scene directory layout: depth.pfm (meters above the base plane),
/// reflectivity.pfm (0..1, 0 marks empty pixels) and scene.toml with
/// base_distance_m plus the expected dimensions.
SceneModel read_scene(const std::filesystem::path& dir);
void write_scene(const std::filesystem::path& dir, const SceneModel& scene);

}  // namespace splidar::io
