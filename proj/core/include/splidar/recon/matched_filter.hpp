#pragma once

#include <optional>

#include "splidar/recon/params.hpp"
#include "splidar/tcspc/histogram.hpp"

namespace splidar::recon {

/// One pixel's matched-filter result. `detected` is false when the pixel has
/// no counts at all; fold_ps/score are then meaningless.
struct MatchedPeak {
  bool detected = false;
  Picos fold_ps = 0;     // bin-center fold time of the best delay
  double score = 0.0;    // log-likelihood margin over a flat histogram
  double confidence = 0.0;  // score normalized to [0, 1]
  std::uint64_t counts = 0;
};

/// Log-domain Gaussian template, one log-probability per bin offset, plus the
/// constant tail value used outside the truncated support.
struct LogKernel {
  std::vector<double> center;  // log s(offset), offset in [-half, half]
  std::ptrdiff_t half = 0;
  double tail_log = 0.0;  // log of the floored tail mass per bin
  double peak_log = 0.0;  // log s(0)

  static LogKernel make(double kernel_fwhm_s, Picos bin_width_ps, std::uint32_t nbins);
};

/// Poisson maximum-likelihood pulse localization on one pixel's folded
/// histogram: argmax over circular shifts tau of sum_b counts(b) * log s(b-tau)
/// with s a discretized Gaussian plus a 1e-6 floor. The score is the margin
/// over the flat-background hypothesis sum(counts) * log(1/nbins).
MatchedPeak log_matched_filter(const tcspc::FoldedHistogram& hist, std::size_t pixel,
                               double kernel_fwhm_s);

/// Same estimator on a caller-supplied bin row (histogram-free path).
MatchedPeak log_matched_filter_row(std::span<const std::uint32_t> bins, Picos period_ps,
                                   Picos bin_width_ps, const LogKernel& kernel);

}  // namespace splidar::recon
