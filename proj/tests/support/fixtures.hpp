#pragma once

// Shared builders for unit and acceptance tests: smooth synthetic scenes,
// hand-rolled event streams, and single-pixel ranging acquisitions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "splidar/gating.hpp"
#include "splidar/link_budget.hpp"
#include "splidar/rng.hpp"
#include "splidar/scene.hpp"
#include "splidar/sim/simulator.hpp"
#include "splidar/tcspc/events.hpp"

namespace splidar::testing {

// Gentle ramp plus a broad bump: local slope stays well under the censoring
// window so neighborhood pooling sees one cluster per pixel.
inline SceneModel make_smooth_scene(std::uint32_t w, std::uint32_t h, double base_distance_m,
                                    double depth_amplitude_m, bool with_empty = true) {
  SceneModel scene;
  scene.width = w;
  scene.height = h;
  scene.base_distance_m = base_distance_m;
  scene.depth_m = Raster<float>(w, h, 0.0f);
  scene.reflectivity = Raster<float>(w, h, 0.0f);
  const double cx = 0.42 * w, cy = 0.58 * h;
  const double rad2 = 0.11 * w * w + 0.11 * h * h;
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      double ramp = (0.25 * x + 0.15 * y) / (w + h);
      double bump = 0.6 * std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / rad2);
      scene.depth_m.at(x, y) = static_cast<float>(depth_amplitude_m * (ramp + bump));
      double refl = 0.35 + 0.45 * (0.5 + 0.5 * std::sin(0.11 * x) * std::cos(0.09 * y));
      bool empty = false;
      if (with_empty) {
        // empty frame border plus one empty blob
        empty = x < 2 || y < 2 || x + 2 >= w || y + 2 >= h;
        double dx = x - 0.8 * w, dy = y - 0.2 * h;
        if (dx * dx + dy * dy < 0.01 * w * h) empty = true;
      }
      scene.reflectivity.at(x, y) = empty ? 0.0f : static_cast<float>(refl);
    }
  }
  scene.validate();
  return scene;
}

inline SceneModel make_flat_scene(std::uint32_t w, std::uint32_t h, double base_distance_m,
                                  double depth_m = 0.0, double refl = 1.0) {
  SceneModel scene;
  scene.width = w;
  scene.height = h;
  scene.base_distance_m = base_distance_m;
  scene.depth_m = Raster<float>(w, h, static_cast<float>(depth_m));
  scene.reflectivity = Raster<float>(w, h, static_cast<float>(refl));
  scene.validate();
  return scene;
}

// Minimal stream wrapper around hand-placed events (already (pixel,time)
// sorted by the caller or sorted here).
inline tcspc::EventStream make_stream(std::uint32_t w, std::uint32_t h, std::uint64_t dwell_ps,
                                      double rep_rate_hz, std::vector<tcspc::PhotonEvent> events,
                                      const GatingSchedule* schedule = nullptr) {
  tcspc::EventStream s;
  s.header.width = w;
  s.header.height = h;
  s.header.dwell_ps = dwell_ps;
  s.header.rep_rate_millihz = static_cast<std::uint64_t>(std::llround(rep_rate_hz * 1000.0));
  s.header.schedule = schedule ? *schedule
                               : GatingSchedule::make(static_cast<Picos>(dwell_ps),
                                                      static_cast<Picos>(dwell_ps) / 2, 0);
  std::sort(events.begin(), events.end(), tcspc::event_order);
  s.events = std::move(events);
  return s;
}

// One single-pixel retro-reflector acquisition per repetition rate: the
// gating period equals the pulse period so every pulse is emitted at phase 0
// and its echo lands inside the detection window.
inline std::vector<tcspc::EventStream> simulate_range_streams(
    double distance_m, const std::vector<double>& rates_hz, Picos dwell_ps, double mu_per_pulse,
    double ambient_hz, std::uint64_t seed, double jitter_fwhm_s = 600e-12,
    double dead_time_s = 10e-6) {
  std::vector<tcspc::EventStream> streams;
  for (std::size_t i = 0; i < rates_hz.size(); ++i) {
    SystemConfig config;
    config.rep_rate_hz = rates_hz[i];
    config.system_jitter_fwhm_s = jitter_fwhm_s;
    config.detector_jitter_fwhm_s = std::min(180e-12, jitter_fwhm_s);
    config.dead_time_s = dead_time_s;
    config.dcr_hz = 0.0;
    config.link_constant = mu_per_pulse * distance_m * distance_m;
    GatingSchedule schedule = recommend_schedule(distance_m, config.pulse_period(), 0);
    NoiseModel noise;
    noise.ambient_rate_hz = ambient_hz;
    SceneModel scene = make_flat_scene(1, 1, distance_m);
    sim::AcquisitionPlan plan;
    plan.dwell_ps = dwell_ps;
    plan.seed = seed * 1000 + i;
    auto result = sim::simulate_acquisition(scene, config, schedule, noise, plan);
    streams.push_back(std::move(result.stream));
  }
  return streams;
}

}  // namespace splidar::testing
