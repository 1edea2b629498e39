#include "splidar/ranging/rate_set.hpp"

#include <numeric>
#include <set>

namespace splidar::ranging {

std::vector<Picos> RateSet::periods_ps() const {
  std::vector<Picos> p;
  p.reserve(rep_rates_hz.size());
  for (double r : rep_rates_hz) p.push_back(pulse_period_ps(r));
  return p;
}

void RateSet::validate() const {
  if (rep_rates_hz.size() < 2) throw InputError("RateSet: need at least two repetition rates");
  std::set<double> uniq;
  for (double r : rep_rates_hz) {
    if (!(r > 0.0)) throw InputError("RateSet: rates must be positive");
    if (!uniq.insert(r).second) throw InputError("RateSet: rates must be distinct");
  }
  if (!(max_range_m > 0.0)) throw InputError("RateSet: max_range must be positive");

  // Combined unambiguous span = LCM of the integer periods; saturate rather
  // than overflow once it is beyond any physical requirement.
  const auto periods = periods_ps();
  constexpr unsigned __int128 kCap = static_cast<unsigned __int128>(1) << 100;
  unsigned __int128 lcm = 1;
  for (Picos p : periods) {
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(lcm % up), up);
    lcm = lcm / g * up;
    if (lcm > kCap) {
      lcm = kCap;
      break;
    }
  }
  const double round_trip_ps = 2.0 * max_range_m / kSpeedOfLight * kPsPerSecond;
  if (static_cast<double>(lcm) < round_trip_ps)
    throw InputError("RateSet: combined period shorter than the max_range round trip");
}

RateSet RateSet::defaults() {
  RateSet s;
  s.rep_rates_hz = {500000.0, 453915.0, 411792.0};
  s.max_range_m = 300000.0;
  return s;
}

}  // namespace splidar::ranging
