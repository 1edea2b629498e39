#include "splidar/recon/censor.hpp"

#include <algorithm>
#include <cmath>

#include "splidar/stats.hpp"
#include "splidar/tcspc/histogram.hpp"

namespace splidar::recon {

Picos censor_time_radius(const SystemConfig& config, const ReconParams& params) {
  if (params.censor_time_radius_ps > 0) return params.censor_time_radius_ps;
  return ps_from_seconds(2.0 * config.system_jitter_sigma_s());
}

namespace {

// Densest event-centered circular window: for each event t, count events
// within circular distance `radius` of t; return the best anchor's count and
// the circular mean of its in-window members. `sorted` must be ascending fold
// times in [0, period) and 2*radius < period.
struct Window {
  std::size_t count = 0;
  Picos mean = 0;
};

Window densest_window(const std::vector<Picos>& sorted, Picos period, Picos radius) {
  Window best;
  const std::size_t n = sorted.size();
  if (n == 0) return best;
  // Unroll one period to each side so circular windows become intervals.
  std::vector<Picos> line;
  line.reserve(3 * n);
  for (Picos t : sorted) line.push_back(t - period);
  line.insert(line.end(), sorted.begin(), sorted.end());
  for (Picos t : sorted) line.push_back(t + period);

  std::size_t best_lo = 0, best_hi = 0;
  std::size_t lo = 0, hi = 0;  // [lo, hi) in-window range on `line`
  for (std::size_t a = 0; a < n; ++a) {
    const Picos center = sorted[a];
    while (line[lo] < center - radius) ++lo;
    if (hi < lo) hi = lo;
    while (hi < line.size() && line[hi] <= center + radius) ++hi;
    if (hi - lo > best.count) {
      best.count = hi - lo;
      best_lo = lo;
      best_hi = hi;
    }
  }
  if (best.count == 0) return best;
  std::vector<Picos> members(line.begin() + static_cast<std::ptrdiff_t>(best_lo),
                             line.begin() + static_cast<std::ptrdiff_t>(best_hi));
  for (Picos& t : members) t = fold_ps(t, period);
  best.mean = static_cast<Picos>(std::llround(circular_mean_ps(members, period)));
  if (best.mean == period) best.mean = 0;
  return best;
}

}  // namespace

CensorResult censor_photons(const tcspc::EventStream& stream, const SystemConfig& config,
                            const ReconParams& params, unsigned n_threads) {
  params.validate();
  const std::uint32_t w = stream.header.width, h = stream.header.height;
  const Picos period = stream.header.pulse_period();
  const Picos radius = censor_time_radius(config, params);
  if (radius <= 0 || 2 * radius >= period)
    throw InputError("censor_photons: time radius must be in (0, period/2)");

  // Fold once, keep per-pixel event index ranges for labeling.
  const std::size_t npix = static_cast<std::size_t>(w) * h;
  std::vector<std::vector<Picos>> folded(npix);
  std::vector<std::vector<std::size_t>> event_index(npix);
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto& e = stream.events[i];
    Picos f = tcspc::fold(e.time_ps, period);
    folded[e.pixel].push_back(f);
    event_index[e.pixel].push_back(i);
  }
  for (auto& v : folded) std::sort(v.begin(), v.end());

  CensorResult res;
  res.is_signal.assign(stream.events.size(), 0);
  res.cluster_center_ps.assign(npix, -1);

  const int win = params.censor_window;
  const double alpha = params.significance_alpha;

  parallel_for_chunks(npix, n_threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Picos> pool;
    for (std::size_t p = begin; p < end; ++p) {
      const std::uint32_t px = static_cast<std::uint32_t>(p % w);
      const std::uint32_t py = static_cast<std::uint32_t>(p / w);
      pool.clear();
      for (int dy = -win; dy <= win; ++dy) {
        int y = static_cast<int>(py) + dy;
        if (y < 0 || y >= static_cast<int>(h)) continue;
        for (int dx = -win; dx <= win; ++dx) {
          int x = static_cast<int>(px) + dx;
          if (x < 0 || x >= static_cast<int>(w)) continue;
          const auto& v = folded[static_cast<std::size_t>(y) * w + x];
          pool.insert(pool.end(), v.begin(), v.end());
        }
      }
      if (pool.empty()) continue;
      std::sort(pool.begin(), pool.end());
      Window cl = densest_window(pool, period, radius);
      if (cl.count == 0) continue;

      // Uniform-background rate from everything outside the cluster window.
      const double outside = static_cast<double>(pool.size() - cl.count);
      const Picos span_outside = period - 2 * radius;
      const double bg_per_window =
          outside * static_cast<double>(2 * radius) / static_cast<double>(span_outside);
      // Every event is a candidate window anchor. Conditioned on an anchor,
      // the window holds that event plus a Poisson number of others, so the
      // per-anchor tail is P(Pois >= count - 1) and a union bound over the
      // pool keeps the family-wise false-positive rate below alpha.
      const double tail = poisson_sf(cl.count - 1, bg_per_window);
      const double p_val = std::min(1.0, static_cast<double>(pool.size()) * tail);
      if (p_val > alpha) continue;

      res.cluster_center_ps[p] = cl.mean;
      // Keep the center pixel's events inside the winning window. Pixels own
      // disjoint event ranges, so these writes do not race.
      const auto& own = event_index[p];
      for (std::size_t idx : own) {
        Picos f = tcspc::fold(stream.events[idx].time_ps, period);
        if (circ_dist_ps(f, cl.mean, period) <= radius) res.is_signal[idx] = 1;
      }
    }
  });
  for (auto b : res.is_signal) res.signal_count += b != 0;
  return res;
}

}  // namespace splidar::recon
