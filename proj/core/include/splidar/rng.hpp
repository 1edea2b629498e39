#pragma once

#include <cmath>
#include <cstdint>

namespace splidar {

namespace detail {
// splitmix64 finalizer (Vigna). Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}  // namespace detail

/// Counter-based generator: output i of stream `key` is
/// mix64(key + (i+1)*golden), i.e. splitmix64 started at `key`. Streams are
/// random-access and independent of evaluation order, which makes per-pixel
/// substreams reproducible under any worker count.
class CounterRng {
 public:
  CounterRng() : CounterRng(0) {}
  explicit CounterRng(std::uint64_t key) : key_(key), counter_(0) {}

  /// Stream for substream index `index` of a run seed (e.g. one per pixel,
  /// plus a small tag to separate processes within the pixel).
  static CounterRng substream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0) {
    std::uint64_t k = detail::mix64(seed ^ detail::mix64(index + detail::kGolden));
    return CounterRng(detail::mix64(k + tag * 0x632be59bd9b4e019ULL));
  }

  /// Independent child stream; the parent is unaffected.
  CounterRng fork(std::uint64_t tag) const {
    return CounterRng(detail::mix64(key_ + detail::mix64(tag + 0xd1342543de82ef95ULL)));
  }

  std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * detail::kGolden); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1], safe as a log argument.
  double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller; polar form avoided to keep draw count input-independent.
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Knuth's product method, split into chunks so the loop count stays small
  /// for large means. Exact in distribution for any mean >= 0.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 32.0) {
      total += poisson_small(32.0);
      mean -= 32.0;
    }
    return total + poisson_small(mean);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Multiply-shift; bias is < 2^-64 * n, irrelevant at the scales used.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  std::uint64_t key_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace splidar
