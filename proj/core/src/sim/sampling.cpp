#include "splidar/sim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace splidar::sim {

std::vector<Picos> emission_epochs(const GatingSchedule& schedule, const SystemConfig& config,
                                   Picos dwell_ps) {
  schedule.validate();
  config.validate();
  if (dwell_ps < 0) throw InputError("emission_epochs: dwell must be >= 0");
  const Picos period = config.pulse_period();
  std::vector<Picos> epochs;
  if (schedule.emission_ps == 0) return epochs;
  epochs.reserve(static_cast<std::size_t>(dwell_ps / period) + 1);
  for (Picos t = 0; t < dwell_ps; t += period) {
    if (gate_state(t, schedule) == GateState::Emission) epochs.push_back(t);
  }
  return epochs;
}

std::vector<Picos> sample_signal_arrivals(std::size_t pixel, const SceneModel& scene,
                                          const SystemConfig& config,
                                          std::span<const Picos> epochs, CounterRng rng) {
  const double mu = expected_signal_per_pulse(pixel, scene, config);
  std::vector<Picos> arrivals;
  if (mu <= 0.0 || epochs.empty()) return arrivals;
  const double d = scene.base_distance_m + static_cast<double>(scene.depth_m[pixel]);
  const Picos tof = time_of_flight_ps(d);
  const double sigma_ps = config.system_jitter_sigma_s() * kPsPerSecond;

  std::uint64_t n = rng.poisson(mu * static_cast<double>(epochs.size()));
  arrivals.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Picos epoch = epochs[rng.below(epochs.size())];
    double jitter = sigma_ps > 0.0 ? rng.gaussian() * sigma_ps : 0.0;
    arrivals.push_back(epoch + tof + static_cast<Picos>(std::llround(jitter)));
  }
  std::sort(arrivals.begin(), arrivals.end());
  return arrivals;
}

namespace {

void add_homogeneous(std::vector<TaggedArrival>& out, double rate_hz, Picos dwell_ps,
                     Source source, CounterRng& rng) {
  if (rate_hz <= 0.0) return;
  std::uint64_t n = rng.poisson(rate_hz * seconds_from_ps(dwell_ps));
  for (std::uint64_t i = 0; i < n; ++i)
    out.push_back({static_cast<Picos>(rng.below(static_cast<std::uint64_t>(dwell_ps))), source});
}

}  // namespace

std::vector<TaggedArrival> sample_noise_arrivals(const NoiseModel& noise,
                                                 const GatingSchedule& schedule,
                                                 const SystemConfig& config,
                                                 std::span<const Picos> epochs, Picos dwell_ps,
                                                 CounterRng rng) {
  noise.validate();
  schedule.validate();
  config.validate();
  if (dwell_ps < 0) throw InputError("sample_noise_arrivals: dwell must be >= 0");
  std::vector<TaggedArrival> out;
  if (dwell_ps == 0) return out;

  CounterRng r_amb = rng.fork(1);
  CounterRng r_dcr = rng.fork(2);
  CounterRng r_ase = rng.fork(3);
  CounterRng r_bs = rng.fork(4);

  add_homogeneous(out, noise.ambient_rate_hz, dwell_ps, Source::Ambient, r_amb);
  add_homogeneous(out, config.dcr_hz, dwell_ps, Source::DarkCount, r_dcr);

  if (noise.ase_rate_open_hz > 0.0) {
    // Thinning against the open-AOM rate: candidates are homogeneous at the
    // upper bound; outside emission only the extinguished fraction survives.
    const double keep_closed = std::pow(10.0, -noise.aom_extinction_db / 10.0);
    std::uint64_t n = r_ase.poisson(noise.ase_rate_open_hz * seconds_from_ps(dwell_ps));
    for (std::uint64_t i = 0; i < n; ++i) {
      Picos t = static_cast<Picos>(r_ase.below(static_cast<std::uint64_t>(dwell_ps)));
      if (gate_state(t, schedule) != GateState::Emission && r_ase.uniform() >= keep_closed) continue;
      out.push_back({t, Source::Ase});
    }
  }

  if (noise.backscatter_peak_rate_hz > 0.0 && !epochs.empty()) {
    // Each pulse sheds an exponentially decaying tail with total mass
    // peak * decay. Draw the Poisson total over all epochs, give each photon
    // a uniform epoch and an exponential offset, and drop photons past the
    // dwell (exact truncation of each tail).
    const double decay_ps = noise.backscatter_decay_s * kPsPerSecond;
    const double mass = noise.backscatter_peak_rate_hz * noise.backscatter_decay_s;
    std::uint64_t n = r_bs.poisson(mass * static_cast<double>(epochs.size()));
    for (std::uint64_t i = 0; i < n; ++i) {
      Picos epoch = epochs[r_bs.below(epochs.size())];
      Picos t = epoch + static_cast<Picos>(std::llround(r_bs.exponential(1.0) * decay_ps));
      if (t < dwell_ps) out.push_back({t, Source::Backscatter});
    }
  }

  std::sort(out.begin(), out.end(),
            [](const TaggedArrival& a, const TaggedArrival& b) { return a.time_ps < b.time_ps; });
  return out;
}

DetectorResult apply_detector(std::span<const TaggedArrival> arrivals,
                              const GatingSchedule& schedule, const SystemConfig& config) {
  schedule.validate();
  config.validate();
  DetectorResult res;
  const Picos dead = config.dead_time_ps();
  Picos last = std::numeric_limits<Picos>::min() / 2;
  Picos prev_time = std::numeric_limits<Picos>::min();
  for (const TaggedArrival& a : arrivals) {
    if (a.time_ps < prev_time) throw InputError("apply_detector: arrivals must be time-sorted");
    prev_time = a.time_ps;
    if (gate_state(a.time_ps, schedule) != GateState::Detection) continue;
    res.gated[static_cast<std::size_t>(a.source)]++;
    if (a.time_ps - last < dead) {
      res.lost_dead_time++;
      continue;
    }
    res.recorded.push_back(a);
    last = a.time_ps;
  }
  return res;
}

std::vector<Picos> apply_detector(std::span<const Picos> arrivals, const GatingSchedule& schedule,
                                  const SystemConfig& config) {
  std::vector<TaggedArrival> tagged;
  tagged.reserve(arrivals.size());
  for (Picos t : arrivals) tagged.push_back({t, Source::Signal});
  DetectorResult res = apply_detector(tagged, schedule, config);
  std::vector<Picos> out;
  out.reserve(res.recorded.size());
  for (const TaggedArrival& a : res.recorded) out.push_back(a.time_ps);
  return out;
}

}  // namespace splidar::sim
