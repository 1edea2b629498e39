#include "splidar/tcspc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splidar/stats.hpp"

namespace splidar::tcspc {

namespace {

double ratio_or_inf(double num, double den) {
  if (den > 0.0) return num / den;
  return std::numeric_limits<double>::infinity();
}

struct Accum {
  double sig_all = 0.0, bg_all = 0.0;
  double sig_ne = 0.0, bg_ne = 0.0;
  std::size_t n_ne = 0;
};

PictureMetrics finish(const Accum& a, std::size_t npix, double livetime_total) {
  PictureMetrics m;
  m.total_pixels = npix;
  m.nonempty_pixels = a.n_ne;
  m.signal_ppp_all = npix ? a.sig_all / static_cast<double>(npix) : 0.0;
  m.signal_ppp_nonempty = a.n_ne ? a.sig_ne / static_cast<double>(a.n_ne) : 0.0;
  m.sbr_all = ratio_or_inf(a.sig_all, a.bg_all);
  m.sbr_nonempty = ratio_or_inf(a.sig_ne, a.bg_ne);
  m.noise_rate_hz = livetime_total > 0.0 ? a.bg_all / livetime_total : 0.0;
  return m;
}

}  // namespace

PictureMetrics compute_metrics(std::span<const PixelTruth> truth,
                               std::span<const double> livetime_s) {
  if (truth.empty()) throw InputError("compute_metrics: no pixels");
  if (truth.size() != livetime_s.size())
    throw InputError("compute_metrics: truth and livetime sizes disagree");
  Accum a;
  double live = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    double s = static_cast<double>(truth[i].recorded_signal);
    double b = static_cast<double>(truth[i].recorded_noise);
    a.sig_all += s;
    a.bg_all += b;
    if (truth[i].nonempty) {
      a.sig_ne += s;
      a.bg_ne += b;
      ++a.n_ne;
    }
    live += livetime_s[i];
  }
  return finish(a, truth.size(), live);
}

PictureMetrics compute_metrics(const FoldedHistogram& hist, std::span<const PixelTruth> truth) {
  if (truth.size() != hist.pixel_count())
    throw InputError("compute_metrics: truth size does not match histogram");
  return compute_metrics(truth, hist.livetime_s);
}

PictureMetrics compute_metrics(const FoldedHistogram& hist, const BlindWindow& window) {
  const std::size_t npix = hist.pixel_count();
  if (npix == 0) throw InputError("compute_metrics: no pixels");
  if (window.window_half_ps <= 0) throw InputError("compute_metrics: window must be > 0");
  if (window.peak_fold_ps && window.peak_fold_ps->size() != npix)
    throw InputError("compute_metrics: peak list size does not match histogram");

  const std::uint32_t nbins = hist.nbins;
  std::uint32_t wb = static_cast<std::uint32_t>(
      std::min<Picos>(nbins, (2 * window.window_half_ps + hist.bin_width_ps - 1) / hist.bin_width_ps));
  wb = std::max<std::uint32_t>(1, wb);

  Accum a;
  double live = 0.0;
  bool any_detected = false;
  for (std::size_t p = 0; p < npix; ++p) {
    auto row = hist.row(p);
    std::uint64_t total = 0;
    for (std::uint32_t c : row) total += c;
    live += hist.livetime_s[p];

    std::uint64_t in_window = 0;
    if (total > 0) {
      if (window.peak_fold_ps) {
        Picos peak = (*window.peak_fold_ps)[p];
        for (std::uint32_t b = 0; b < nbins; ++b) {
          Picos centre = static_cast<Picos>(b) * hist.bin_width_ps + hist.bin_width_ps / 2;
          if (circ_dist_ps(centre, peak, hist.period_ps) <= window.window_half_ps)
            in_window += row[b];
        }
      } else {
        // Densest circular window of wb bins.
        std::uint64_t cur = 0;
        for (std::uint32_t b = 0; b < wb; ++b) cur += row[b % nbins];
        in_window = cur;
        for (std::uint32_t s = 1; s < nbins; ++s) {
          cur += row[(s + wb - 1) % nbins];
          cur -= row[s - 1];
          in_window = std::max(in_window, cur);
        }
      }
    }

    // Background floor per bin: median, or the leave-window-out mean when the
    // histogram is too sparse for a useful median.
    double floor_bin = estimate_background_floor(hist, p);
    if (nbins > wb) {
      double leave_out = static_cast<double>(total - in_window) / static_cast<double>(nbins - wb);
      floor_bin = std::max(floor_bin, leave_out);
    }
    double expected_bg = floor_bin * static_cast<double>(wb);

    double sig = 0.0;
    bool detected = false;
    if (in_window > 0) {
      double p_tail = poisson_sf(in_window, expected_bg) *
                      (static_cast<double>(nbins) / static_cast<double>(wb));
      detected = p_tail <= window.alpha;
    }
    if (detected) {
      sig = std::max(0.0, static_cast<double>(in_window) - expected_bg);
      any_detected = true;
    }
    double bg = static_cast<double>(total) - sig;
    a.sig_all += sig;
    a.bg_all += bg;
    if (detected) {
      a.sig_ne += sig;
      a.bg_ne += bg;
      ++a.n_ne;
    }
  }

  PictureMetrics m = finish(a, npix, live);
  m.blind = true;
  m.blind_unreliable = !any_detected;
  return m;
}

}  // namespace splidar::tcspc
