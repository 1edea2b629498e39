#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "splidar/common.hpp"
#include "splidar/tcspc/metrics.hpp"

namespace splidar::sim {

/// How one acquisition run scans the picture.
struct AcquisitionPlan {
  Picos dwell_ps = 0;  // per-pixel dwell, > 0
  std::uint64_t seed = 0;
  /// Pixel visit order; empty means row-major over the full picture. Each
  /// scanned pixel appears exactly once.
  std::vector<std::uint32_t> scan_order;
  unsigned n_threads = 1;

  void validate(std::size_t pixel_count) const;
};

enum class Source : std::uint8_t { Signal = 0, Ambient, DarkCount, Ase, Backscatter };
inline constexpr std::size_t kSourceCount = 5;
const char* to_string(Source s);

/// Exact photon bookkeeping for one pixel. "arrivals" hit the detector during
/// the dwell, "gated" arrived while the detector was live, "recorded" also
/// survived dead time. gated - recorded events were lost to dead time.
struct PixelLedger {
  std::uint64_t pulses = 0;
  std::array<std::uint64_t, kSourceCount> arrivals{};
  std::array<std::uint64_t, kSourceCount> gated{};
  std::array<std::uint64_t, kSourceCount> recorded{};
  std::uint64_t lost_dead_time = 0;
  bool nonempty = false;

  std::uint64_t gated_total() const;
  std::uint64_t recorded_total() const;
  std::uint64_t recorded_noise() const;
};

/// Per-pixel ground truth for a simulated stream.
struct SimulatedTruth {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<PixelLedger> pixels;

  /// Reduction used by metric computation.
  std::vector<tcspc::PixelTruth> metrics_view() const;
};

}  // namespace splidar::sim
