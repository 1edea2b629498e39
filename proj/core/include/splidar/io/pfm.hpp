#pragma once

#include <cstdint>
#include <filesystem>

#include "splidar/raster.hpp"

namespace splidar::io {

/// Grayscale Portable Float Map ("Pf"), little-endian, scanlines stored
/// bottom-to-top per the format convention. Row 0 of the raster is the top
/// image row.
Raster<float> read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const Raster<float>& image);

/// Binary PGM ("P5", maxval 255) for masks; nonzero means set.
Raster<std::uint8_t> read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Raster<std::uint8_t>& mask);

}  // namespace splidar::io
