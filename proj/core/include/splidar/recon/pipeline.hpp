#pragma once

#include <optional>

#include "splidar/recon/censor.hpp"
#include "splidar/recon/matched_filter.hpp"
#include "splidar/recon/tv.hpp"
#include "splidar/tcspc/events.hpp"
#include "splidar/tcspc/histogram.hpp"

namespace splidar::recon {

/// Anchor at a known stand-off distance: its round-trip fold time maps to
/// depth zero, so reconstructed depth is height above that plane.
DepthAnchor anchor_from_distance(double base_distance_m, Picos period_ps);

/// Blind anchor: the globally densest fold-time bin maps to depth zero.
DepthAnchor blind_anchor(const tcspc::FoldedHistogram& hist);
/// Stream variant; pools fold times into one row, O(nbins) memory.
DepthAnchor blind_anchor(const tcspc::EventStream& stream, Picos bin_width_ps);

/// Pixelwise Poisson matched filtering of a folded histogram. Every pixel
/// with at least one count yields a (possibly noise-dominated) depth; only
/// zero-count pixels are invalid.
DepthEstimate reconstruct_matched_filter(const tcspc::FoldedHistogram& hist,
                                         const SystemConfig& config, const ReconParams& params,
                                         const DepthAnchor& anchor, unsigned n_threads = 1);

/// Stream variant binning one pixel at a time, so a full dense histogram is
/// never materialized.
DepthEstimate reconstruct_matched_filter(const tcspc::EventStream& stream,
                                         const SystemConfig& config, const ReconParams& params,
                                         const DepthAnchor& anchor, unsigned n_threads = 1);

/// Censoring + matched-filter initialization + TV refinement. valid_mask
/// marks pixels whose photon cluster passed the significance test; the
/// remaining pixels are seeded from their nearest valid neighbor and
/// in-painted by the regularizer.
DepthEstimate reconstruct_censor_tv(const tcspc::EventStream& stream, const SystemConfig& config,
                                    const ReconParams& params, const DepthAnchor& anchor,
                                    unsigned n_threads = 1, TvTrace* trace = nullptr);

}  // namespace splidar::recon
