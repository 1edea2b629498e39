#pragma once

#include <cstdint>
#include <vector>

#include "splidar/recon/params.hpp"
#include "splidar/system.hpp"
#include "splidar/tcspc/events.hpp"

namespace splidar::recon {

/// Per-event signal/noise labels, parallel to stream.events.
struct CensorResult {
  std::vector<std::uint8_t> is_signal;
  std::size_t signal_count = 0;
  /// Fold time of the accepted cluster center per pixel, -1 when the pixel
  /// kept no signal.
  std::vector<Picos> cluster_center_ps;
};

/// Spatio-temporal censoring: for each pixel, pool fold times from the
/// (2*censor_window+1)^2 neighborhood, scan event-centered circular windows of
/// radius censor_time_radius for the densest cluster, and keep the center
/// pixel's in-window events iff the cluster is significant against the pooled
/// uniform background (Poisson tail, union bound over candidate anchors).
CensorResult censor_photons(const tcspc::EventStream& stream, const SystemConfig& config,
                            const ReconParams& params, unsigned n_threads = 1);

/// Effective time radius: explicit parameter, or 2 sigma of the system jitter.
Picos censor_time_radius(const SystemConfig& config, const ReconParams& params);

}  // namespace splidar::recon
