#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace splidar {

/// Signed picosecond count. All timestamps, schedule durations and folded
/// residues are whole picoseconds so that modular folding is exact.
using Picos = std::int64_t;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
inline constexpr double kPsPerSecond = 1e12;

/// Gaussian sigma for a given full width at half maximum.
inline double sigma_from_fwhm(double fwhm) {
  return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

inline double seconds_from_ps(Picos t) { return static_cast<double>(t) / kPsPerSecond; }

/// Nearest whole picosecond; durations beyond ~106 days do not occur here.
inline Picos ps_from_seconds(double t) { return static_cast<Picos>(std::llround(t * kPsPerSecond)); }

/// Laser pulse period on the integer picosecond grid. Emission epochs are
/// multiples of this value, which keeps folding by the same period exact.
inline Picos pulse_period_ps(double rep_rate_hz) {
  if (!(rep_rate_hz > 0.0)) throw std::invalid_argument("pulse_period_ps: rep rate must be > 0");
  return static_cast<Picos>(std::llround(kPsPerSecond / rep_rate_hz));
}

/// t mod period, result in [0, period).
inline Picos fold_ps(Picos t, Picos period) {
  if (period <= 0) throw std::invalid_argument("fold_ps: period must be > 0");
  Picos r = t % period;
  return r < 0 ? r + period : r;
}

/// Signed circular difference a - b, wrapped into (-period/2, period/2].
inline Picos circ_diff_ps(Picos a, Picos b, Picos period) {
  Picos d = fold_ps(a - b, period);
  return d > period / 2 ? d - period : d;
}

/// Unsigned circular distance between two fold times.
inline Picos circ_dist_ps(Picos a, Picos b, Picos period) {
  Picos d = fold_ps(a - b, period);
  return d > period - d ? period - d : d;
}

/// Invalid input that a caller could have validated (bad geometry, malformed
/// file, out-of-range argument).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// No statistically significant photon cluster was found.
class NoDetectionError : public std::runtime_error {
 public:
  explicit NoDetectionError(const std::string& what) : std::runtime_error(what) {}
};

/// Residues admit several consistent range hypotheses.
class AmbiguityError : public std::runtime_error {
 public:
  explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

/// Runs fn(begin, end) over disjoint chunks of [0, n). Chunking is by index
/// range, so results written to per-index slots are identical for any worker
/// count. n_threads <= 1 runs inline.
inline void parallel_for_chunks(std::size_t n, unsigned n_threads,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = hw ? hw : 1;
  if (n_threads > n) n_threads = static_cast<unsigned>(n);
  if (n_threads <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::size_t chunk = (n + n_threads - 1) / n_threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& t : pool) t.join();
}

}  // namespace splidar
