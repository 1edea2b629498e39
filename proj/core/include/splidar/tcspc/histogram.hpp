#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splidar/gating.hpp"
#include "splidar/tcspc/events.hpp"

namespace splidar::tcspc {

/// Timestamp folded into the laser pulse period.
inline Picos fold(std::uint64_t time_ps, Picos period_ps) {
  return fold_ps(static_cast<Picos>(time_ps), period_ps);
}

/// Per-pixel histograms of fold times, pixel-major so one pixel's bins are
/// contiguous for reconstruction scans.
struct FoldedHistogram {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Picos period_ps = 0;
  Picos bin_width_ps = 0;
  std::uint32_t nbins = 0;
  std::vector<std::uint32_t> counts;  // counts[pixel*nbins + bin]
  std::vector<double> livetime_s;     // detection-mode exposure per pixel

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  std::span<const std::uint32_t> row(std::size_t pixel) const {
    return {counts.data() + pixel * nbins, nbins};
  }
  std::uint64_t total_counts() const;
};

/// Bin index of a fold time; the last bin may cover a partial width when the
/// period is not a multiple of the bin width.
inline std::uint32_t bin_of(Picos fold_time, Picos bin_width_ps) {
  return static_cast<std::uint32_t>(fold_time / bin_width_ps);
}

/// Single pass over the stream. Worker shards split at pixel boundaries and
/// write disjoint count regions, so any worker count yields identical output.
/// Throws InputError (with the record index and its byte offset in the
/// standard file layout) for events whose pixel is out of range.
FoldedHistogram build_histograms(const EventStream& stream, Picos period_ps,
                                 Picos bin_width_ps, unsigned n_threads = 1);

/// Fold and count one pixel's events into `out` (resized/zeroed here).
/// Shares the binning rule with build_histograms without allocating the
/// full picture.
void bin_pixel(std::span<const PhotonEvent> events, Picos period_ps, Picos bin_width_ps,
               std::vector<std::uint32_t>& out);

/// Detection-mode exposure in seconds over [0, dwell).
double detection_livetime(const GatingSchedule& schedule, Picos dwell_ps);

/// Median bin count of one pixel, a robust per-bin background level.
/// Requires at least 8 bins.
double estimate_background_floor(const FoldedHistogram& hist, std::size_t pixel);

}  // namespace splidar::tcspc
