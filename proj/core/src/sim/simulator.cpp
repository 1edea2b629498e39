#include "splidar/sim/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace splidar::sim {

const char* to_string(Source s) {
  switch (s) {
    case Source::Signal: return "signal";
    case Source::Ambient: return "ambient";
    case Source::DarkCount: return "dcr";
    case Source::Ase: return "ase";
    case Source::Backscatter: return "backscatter";
  }
  return "?";
}

void AcquisitionPlan::validate(std::size_t pixel_count) const {
  if (dwell_ps <= 0) throw InputError("AcquisitionPlan: dwell must be > 0");
  if (!scan_order.empty()) {
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t p : scan_order) {
      if (p >= pixel_count) throw InputError("AcquisitionPlan: scan pixel out of range");
      if (!seen.insert(p).second) throw InputError("AcquisitionPlan: pixel scanned twice");
    }
  }
}

std::uint64_t PixelLedger::gated_total() const {
  return std::accumulate(gated.begin(), gated.end(), std::uint64_t{0});
}
std::uint64_t PixelLedger::recorded_total() const {
  return std::accumulate(recorded.begin(), recorded.end(), std::uint64_t{0});
}
std::uint64_t PixelLedger::recorded_noise() const {
  return recorded_total() - recorded[static_cast<std::size_t>(Source::Signal)];
}

std::vector<tcspc::PixelTruth> SimulatedTruth::metrics_view() const {
  std::vector<tcspc::PixelTruth> v(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    v[i].recorded_signal = pixels[i].recorded[static_cast<std::size_t>(Source::Signal)];
    v[i].recorded_noise = pixels[i].recorded_noise();
    v[i].nonempty = pixels[i].nonempty;
  }
  return v;
}

AcquisitionResult simulate_acquisition(const SceneModel& scene, const SystemConfig& config,
                                       const GatingSchedule& schedule, const NoiseModel& noise,
                                       const AcquisitionPlan& plan) {
  scene.validate();
  config.validate();
  schedule.validate();
  noise.validate();
  const std::size_t npix = scene.pixel_count();
  plan.validate(npix);

  std::vector<std::uint32_t> order = plan.scan_order;
  if (order.empty()) {
    order.resize(npix);
    std::iota(order.begin(), order.end(), 0u);
  }

  // One epoch grid serves every pixel: each pixel's clock starts at gate
  // phase zero when its dwell begins.
  const std::vector<Picos> epochs = emission_epochs(schedule, config, plan.dwell_ps);

  AcquisitionResult res;
  res.truth.width = scene.width;
  res.truth.height = scene.height;
  res.truth.pixels.assign(npix, PixelLedger{});

  std::vector<std::vector<tcspc::PhotonEvent>> per_pixel(npix);

  parallel_for_chunks(order.size(), plan.n_threads, [&](std::size_t begin, std::size_t end) {
    std::vector<TaggedArrival> merged;
    for (std::size_t k = begin; k < end; ++k) {
      const std::uint32_t pixel = order[k];
      PixelLedger& led = res.truth.pixels[pixel];
      led.pulses = epochs.size();
      led.nonempty = !scene.empty_pixel(pixel);

      std::vector<Picos> signal = sample_signal_arrivals(
          pixel, scene, config, epochs, CounterRng::substream(plan.seed, pixel, 0));
      std::vector<TaggedArrival> bg = sample_noise_arrivals(
          noise, schedule, config, epochs, plan.dwell_ps, CounterRng::substream(plan.seed, pixel, 1));

      merged.clear();
      merged.reserve(signal.size() + bg.size());
      std::size_t si = 0, bi = 0;
      auto push = [&](TaggedArrival a) {
        if (a.time_ps >= 0 && a.time_ps < plan.dwell_ps) {
          merged.push_back(a);
          led.arrivals[static_cast<std::size_t>(a.source)]++;
        }
      };
      while (si < signal.size() || bi < bg.size()) {
        if (bi == bg.size() || (si < signal.size() && signal[si] <= bg[bi].time_ps))
          push({signal[si++], Source::Signal});
        else
          push(bg[bi++]);
      }

      DetectorResult det = apply_detector(merged, schedule, config);
      led.gated = det.gated;
      led.lost_dead_time = det.lost_dead_time;
      std::vector<tcspc::PhotonEvent>& evs = per_pixel[pixel];
      evs.reserve(det.recorded.size());
      for (const TaggedArrival& a : det.recorded) {
        led.recorded[static_cast<std::size_t>(a.source)]++;
        evs.push_back({pixel, static_cast<std::uint64_t>(a.time_ps)});
      }
    }
  });

  tcspc::EventStream& stream = res.stream;
  stream.header.width = scene.width;
  stream.header.height = scene.height;
  stream.header.dwell_ps = static_cast<std::uint64_t>(plan.dwell_ps);
  stream.header.schedule = schedule;
  stream.header.rep_rate_millihz = static_cast<std::uint64_t>(std::llround(config.rep_rate_hz * 1000.0));
  std::size_t total = 0;
  for (const auto& v : per_pixel) total += v.size();
  stream.events.reserve(total);
  for (const auto& v : per_pixel)
    stream.events.insert(stream.events.end(), v.begin(), v.end());
  return res;
}

}  // namespace splidar::sim
