#include "splidar/recon/matched_filter.hpp"

#include <algorithm>
#include <cmath>

namespace splidar::recon {

LogKernel LogKernel::make(double kernel_fwhm_s, Picos bin_width_ps, std::uint32_t nbins) {
  if (!(kernel_fwhm_s > 0.0)) throw InputError("matched filter: kernel FWHM must be > 0");
  if (bin_width_ps <= 0 || nbins == 0) throw InputError("matched filter: bad binning");
  const double sigma_bins = sigma_from_fwhm(kernel_fwhm_s) * kPsPerSecond /
                            static_cast<double>(bin_width_ps);
  // Support out to 6 sigma; beyond that the floor dominates anyway.
  std::ptrdiff_t half = static_cast<std::ptrdiff_t>(std::ceil(6.0 * sigma_bins));
  half = std::min<std::ptrdiff_t>(half, (nbins - 1) / 2);
  half = std::max<std::ptrdiff_t>(half, 0);

  LogKernel k;
  k.half = half;
  k.center.resize(static_cast<std::size_t>(2 * half + 1));
  std::vector<double> mass(k.center.size());
  double total = 0.0;
  for (std::ptrdiff_t o = -half; o <= half; ++o) {
    double u = static_cast<double>(o) / sigma_bins;
    double m = std::exp(-0.5 * u * u);
    mass[static_cast<std::size_t>(o + half)] = m;
    total += m;
  }
  // Normalize to a probability over the whole period, then floor every bin at
  // epsilon so log stays finite, and renormalize.
  const double eps = 1e-6;
  const double norm = 1.0 + eps * static_cast<double>(nbins);
  for (std::size_t i = 0; i < mass.size(); ++i)
    k.center[i] = std::log((mass[i] / total + eps) / norm);
  k.tail_log = std::log(eps / norm);
  k.peak_log = k.center[static_cast<std::size_t>(half)];
  return k;
}

MatchedPeak log_matched_filter_row(std::span<const std::uint32_t> bins, Picos period_ps,
                                   Picos bin_width_ps, const LogKernel& kernel) {
  const std::ptrdiff_t nbins = static_cast<std::ptrdiff_t>(bins.size());
  MatchedPeak peak;
  std::uint64_t total = 0;
  for (auto c : bins) total += c;
  peak.counts = total;
  if (total == 0) return peak;

  // LL(tau) = total * tail + sum over occupied bins near tau of
  // counts * (kernel - tail); only shifts within the kernel support of an
  // occupied bin differ from the base value, so accumulate event-driven.
  std::vector<double> lift(bins.size(), 0.0);
  for (std::ptrdiff_t b = 0; b < nbins; ++b) {
    if (bins[static_cast<std::size_t>(b)] == 0) continue;
    const double c = bins[static_cast<std::size_t>(b)];
    for (std::ptrdiff_t o = -kernel.half; o <= kernel.half; ++o) {
      std::ptrdiff_t tau = b - o;
      tau %= nbins;
      if (tau < 0) tau += nbins;
      lift[static_cast<std::size_t>(tau)] +=
          c * (kernel.center[static_cast<std::size_t>(o + kernel.half)] - kernel.tail_log);
    }
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < lift.size(); ++t)
    if (lift[t] > lift[best]) best = t;

  const double n = static_cast<double>(total);
  const double ll = n * kernel.tail_log + lift[best];
  const double flat = n * std::log(1.0 / static_cast<double>(nbins));
  peak.detected = true;
  Picos center = static_cast<Picos>(best) * bin_width_ps + bin_width_ps / 2;
  peak.fold_ps = std::min(center, period_ps - 1);
  peak.score = ll - flat;
  const double ceiling = n * (kernel.peak_log - std::log(1.0 / static_cast<double>(nbins)));
  peak.confidence = ceiling > 0.0 ? std::clamp(peak.score / ceiling, 0.0, 1.0) : 0.0;
  return peak;
}

MatchedPeak log_matched_filter(const tcspc::FoldedHistogram& hist, std::size_t pixel,
                               double kernel_fwhm_s) {
  if (pixel >= hist.pixel_count()) throw InputError("matched filter: pixel out of range");
  LogKernel kernel = LogKernel::make(kernel_fwhm_s, hist.bin_width_ps, hist.nbins);
  return log_matched_filter_row(hist.row(pixel), hist.period_ps, hist.bin_width_ps, kernel);
}

}  // namespace splidar::recon
