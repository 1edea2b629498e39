#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace splidar {

/// Row-major 2D grid. Row 0 is the top image row; pixel index = y*width + x,
/// matching the scan order of acquisition and the event stream pixel field.
template <typename T>
struct Raster {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<T> data;

  Raster() = default;
  Raster(std::uint32_t w, std::uint32_t h, T fill = T{})
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::size_t size() const { return data.size(); }
  bool same_shape(const Raster& o) const { return width == o.width && height == o.height; }

  T& at(std::uint32_t x, std::uint32_t y) { return data[idx(x, y)]; }
  const T& at(std::uint32_t x, std::uint32_t y) const { return data[idx(x, y)]; }
  T& operator[](std::size_t i) { return data[i]; }
  const T& operator[](std::size_t i) const { return data[i]; }

  std::size_t idx(std::uint32_t x, std::uint32_t y) const {
    if (x >= width || y >= height) throw std::out_of_range("Raster: pixel out of range");
    return static_cast<std::size_t>(y) * width + x;
  }
};

}  // namespace splidar
