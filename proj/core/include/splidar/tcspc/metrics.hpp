#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "splidar/tcspc/histogram.hpp"

namespace splidar::tcspc {

/// Picture-level photon budget. SBR values are +infinity when no background
/// was recorded.
struct PictureMetrics {
  double signal_ppp_all = 0.0;       // mean signal counts per pixel
  double signal_ppp_nonempty = 0.0;  // restricted to non-empty pixels
  double sbr_all = 0.0;              // total signal / total background
  double sbr_nonempty = 0.0;
  double noise_rate_hz = 0.0;        // background counts / detection livetime
  std::size_t nonempty_pixels = 0;
  std::size_t total_pixels = 0;
  bool blind = false;
  /// Blind mode found no significant peak anywhere; values are not usable.
  bool blind_unreliable = false;
};

/// Ground-truth bookkeeping for one pixel, as recorded by the simulator.
struct PixelTruth {
  std::uint64_t recorded_signal = 0;
  std::uint64_t recorded_noise = 0;
  bool nonempty = false;
};

/// Simulation mode: exact per-pixel signal/background split from truth.
PictureMetrics compute_metrics(std::span<const PixelTruth> truth,
                               std::span<const double> livetime_s);
PictureMetrics compute_metrics(const FoldedHistogram& hist, std::span<const PixelTruth> truth);

/// Blind mode: per pixel, counts inside a window of +-window_half_ps around
/// an estimated peak are signal above the background floor; a pixel is
/// non-empty when the window count is significant at `alpha` against the
/// floor (Bonferroni-corrected for the window scan).
struct BlindWindow {
  Picos window_half_ps = 0;
  double alpha = 1e-3;
  /// Peak fold time per pixel (e.g. from matched filtering); estimated
  /// internally by a densest-window scan when absent.
  std::optional<std::vector<Picos>> peak_fold_ps;
};

PictureMetrics compute_metrics(const FoldedHistogram& hist, const BlindWindow& window);

}  // namespace splidar::tcspc
