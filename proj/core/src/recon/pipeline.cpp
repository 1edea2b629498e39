#include "splidar/recon/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "splidar/gating.hpp"

namespace splidar::recon {

DepthAnchor anchor_from_distance(double base_distance_m, Picos period_ps) {
  return {fold_ps(time_of_flight_ps(base_distance_m), period_ps), 0.0};
}

DepthAnchor blind_anchor(const tcspc::FoldedHistogram& hist) {
  if (hist.nbins == 0) throw InputError("blind_anchor: empty histogram");
  std::vector<std::uint64_t> pooled(hist.nbins, 0);
  for (std::size_t p = 0; p < hist.pixel_count(); ++p) {
    auto row = hist.row(p);
    for (std::uint32_t b = 0; b < hist.nbins; ++b) pooled[b] += row[b];
  }
  std::size_t best = 0;
  for (std::size_t b = 1; b < pooled.size(); ++b)
    if (pooled[b] > pooled[best]) best = b;
  Picos center = static_cast<Picos>(best) * hist.bin_width_ps + hist.bin_width_ps / 2;
  return {std::min(center, hist.period_ps - 1), 0.0};
}

DepthEstimate reconstruct_matched_filter(const tcspc::FoldedHistogram& hist,
                                         const SystemConfig& config, const ReconParams& params,
                                         const DepthAnchor& anchor, unsigned n_threads) {
  params.validate();
  config.validate();
  DepthEstimate est = DepthEstimate::zeros(hist.width, hist.height);
  const LogKernel kernel =
      LogKernel::make(config.system_jitter_fwhm_s, hist.bin_width_ps, hist.nbins);
  parallel_for_chunks(hist.pixel_count(), n_threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      MatchedPeak peak =
          log_matched_filter_row(hist.row(p), hist.period_ps, hist.bin_width_ps, kernel);
      if (!peak.detected) continue;
      est.valid_mask.data[p] = 1;
      est.confidence.data[p] = static_cast<float>(peak.confidence);
      est.depth_m.data[p] =
          static_cast<float>(depth_from_fold(peak.fold_ps, anchor, hist.period_ps));
    }
  });
  return est;
}

DepthAnchor blind_anchor(const tcspc::EventStream& stream, Picos bin_width_ps) {
  const Picos period = stream.header.pulse_period();
  if (bin_width_ps <= 0 || bin_width_ps > period)
    throw InputError("blind_anchor: bin width must be in (0, period]");
  const std::size_t nbins = static_cast<std::size_t>((period + bin_width_ps - 1) / bin_width_ps);
  std::vector<std::uint64_t> pooled(nbins, 0);
  for (const auto& e : stream.events)
    pooled[tcspc::bin_of(tcspc::fold(e.time_ps, period), bin_width_ps)]++;
  std::size_t best = 0;
  for (std::size_t b = 1; b < nbins; ++b)
    if (pooled[b] > pooled[best]) best = b;
  Picos center = static_cast<Picos>(best) * bin_width_ps + bin_width_ps / 2;
  return {std::min(center, period - 1), 0.0};
}

DepthEstimate reconstruct_matched_filter(const tcspc::EventStream& stream,
                                         const SystemConfig& config, const ReconParams& params,
                                         const DepthAnchor& anchor, unsigned n_threads) {
  params.validate();
  config.validate();
  const Picos period = stream.header.pulse_period();
  const Picos bw = params.bin_width_ps;
  const std::uint32_t nbins = static_cast<std::uint32_t>((period + bw - 1) / bw);
  const LogKernel kernel = LogKernel::make(config.system_jitter_fwhm_s, bw, nbins);
  DepthEstimate est = DepthEstimate::zeros(stream.header.width, stream.header.height);
  parallel_for_chunks(stream.header.pixel_count(), n_threads, [&](std::size_t b, std::size_t e) {
    std::vector<std::uint32_t> bins;
    for (std::size_t p = b; p < e; ++p) {
      tcspc::bin_pixel(stream.pixel_events(static_cast<std::uint32_t>(p)), period, bw, bins);
      MatchedPeak peak = log_matched_filter_row(bins, period, bw, kernel);
      if (!peak.detected) continue;
      est.valid_mask.data[p] = 1;
      est.confidence.data[p] = static_cast<float>(peak.confidence);
      est.depth_m.data[p] = static_cast<float>(depth_from_fold(peak.fold_ps, anchor, period));
    }
  });
  return est;
}

DepthEstimate reconstruct_censor_tv(const tcspc::EventStream& stream, const SystemConfig& config,
                                    const ReconParams& params, const DepthAnchor& anchor,
                                    unsigned n_threads, TvTrace* trace) {
  params.validate();
  config.validate();
  const Picos period = stream.header.pulse_period();
  const std::uint32_t w = stream.header.width, h = stream.header.height;

  CensorResult censored = censor_photons(stream, config, params, n_threads);

  TvProblem prob;
  prob.width = w;
  prob.height = h;
  prob.period_ps = period;
  prob.anchor = anchor;
  prob.sigma_ps = config.system_jitter_sigma_s() * kPsPerSecond;
  prob.folded.resize(prob.pixel_count());
  for (std::size_t i = 0; i < stream.events.size(); ++i)
    if (censored.is_signal[i])
      prob.folded[stream.events[i].pixel].push_back(
          tcspc::fold(stream.events[i].time_ps, period));

  // Matched-filter initialization on the censored photons only.
  DepthEstimate init = DepthEstimate::zeros(w, h);
  const Picos bw = params.bin_width_ps;
  const std::uint32_t nbins = static_cast<std::uint32_t>((period + bw - 1) / bw);
  const LogKernel kernel = LogKernel::make(config.system_jitter_fwhm_s, bw, nbins);
  parallel_for_chunks(prob.pixel_count(), n_threads, [&](std::size_t b, std::size_t e) {
    std::vector<std::uint32_t> bins(nbins);
    for (std::size_t p = b; p < e; ++p) {
      if (prob.folded[p].empty()) {
        init.depth_m.data[p] = static_cast<float>(anchor.depth_m);
        continue;
      }
      std::fill(bins.begin(), bins.end(), 0u);
      for (Picos f : prob.folded[p]) bins[tcspc::bin_of(f, bw)]++;
      MatchedPeak peak = log_matched_filter_row(bins, period, bw, kernel);
      init.valid_mask.data[p] = 1;
      init.confidence.data[p] = static_cast<float>(peak.confidence);
      init.depth_m.data[p] = static_cast<float>(depth_from_fold(peak.fold_ps, anchor, period));
    }
  });

  // Invalid pixels start at the depth of the nearest censor-passed pixel
  // (breadth-first flood from all valid pixels) so the regularizer only has
  // to smooth the in-painted surface, not transport it across the frame.
  const std::size_t nvalid = init.valid_count();
  if (nvalid > 0 && nvalid < prob.pixel_count()) {
    std::vector<std::uint32_t> frontier;
    frontier.reserve(nvalid);
    std::vector<std::uint8_t> seen(prob.pixel_count(), 0);
    for (std::size_t p = 0; p < prob.pixel_count(); ++p)
      if (init.valid_mask.data[p]) {
        seen[p] = 1;
        frontier.push_back(static_cast<std::uint32_t>(p));
      }
    std::vector<std::uint32_t> next;
    while (!frontier.empty()) {
      next.clear();
      for (std::uint32_t p : frontier) {
        const std::uint32_t x = p % w, y = p / w;
        const std::uint32_t nb[4] = {x > 0 ? p - 1 : p, x + 1 < w ? p + 1 : p,
                                     y > 0 ? p - w : p, y + 1 < h ? p + w : p};
        for (std::uint32_t q : nb) {
          if (seen[q]) continue;
          seen[q] = 1;
          init.depth_m.data[q] = init.depth_m.data[p];
          next.push_back(q);
        }
      }
      frontier.swap(next);
    }
  }

  return tv_depth_reconstruct(init, prob, params, trace, n_threads);
}

}  // namespace splidar::recon
