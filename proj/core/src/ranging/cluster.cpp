#include "splidar/ranging/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "splidar/stats.hpp"

namespace splidar::ranging {

ClusterDetection detect_cluster(std::span<const Picos> folded, Picos period, Picos window_ps,
                                double floor_per_window, double alpha) {
  if (period <= 0) throw InputError("detect_cluster: period must be > 0");
  if (window_ps <= 0 || window_ps >= period)
    throw InputError("detect_cluster: window must be in (0, period)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("detect_cluster: alpha must be in (0,1)");

  ClusterDetection out;
  const std::size_t n = folded.size();
  if (n == 0) return out;

  std::vector<Picos> sorted(folded.begin(), folded.end());
  std::sort(sorted.begin(), sorted.end());
  for (Picos t : sorted)
    if (t < 0 || t >= period) throw InputError("detect_cluster: fold time outside [0, period)");

  // Left-anchored windows [t_e, t_e + w] cover every achievable count; wrap
  // handled by unrolling one period.
  std::size_t best_lo = 0, best_count = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < n; ++lo) {
    if (hi < lo) hi = lo;
    auto unrolled = [&](std::size_t i) {
      return i < n ? sorted[i] : sorted[i - n] + period;
    };
    while (hi + 1 < lo + n && unrolled(hi + 1) - sorted[lo] <= window_ps) ++hi;
    const std::size_t count = hi - lo + 1;
    if (count > best_count) {
      best_count = count;
      best_lo = lo;
    }
  }

  std::vector<Picos> members;
  members.reserve(best_count);
  for (std::size_t i = best_lo; i < best_lo + best_count; ++i)
    members.push_back(fold_ps(i < n ? sorted[i] : sorted[i - n] + period, period));
  double mean = circular_mean_ps(members, period);

  out.count = best_count;
  out.residue_ps = static_cast<Picos>(std::llround(mean)) % period;

  double floor = floor_per_window;
  if (floor < 0.0)
    floor = static_cast<double>(n) * static_cast<double>(window_ps) / static_cast<double>(period);
  const double n_windows = static_cast<double>(period) / static_cast<double>(window_ps);
  out.p_value = std::min(1.0, poisson_sf(best_count, floor) * n_windows);
  out.detected = out.p_value <= alpha;
  return out;
}

}  // namespace splidar::ranging
