#include "splidar/link_budget.hpp"

#include <cmath>

namespace splidar {

double expected_signal_per_pulse(std::size_t pixel, const SceneModel& scene,
                                 const SystemConfig& config) {
  if (pixel >= scene.pixel_count()) throw InputError("expected_signal_per_pulse: pixel out of range");
  if (scene.empty_pixel(pixel)) return 0.0;
  double d = scene.base_distance_m + static_cast<double>(scene.depth_m[pixel]);
  if (!(d > 0.0)) throw InputError("expected_signal_per_pulse: range must be > 0");
  double refl = static_cast<double>(scene.reflectivity[pixel]);
  return config.link_constant * refl * std::exp(-2.0 * config.attenuation_per_m * d) / (d * d);
}

std::size_t detected_pulse_count(const GatingSchedule& schedule, const SystemConfig& config,
                                 Picos dwell_ps, double distance_m) {
  schedule.validate();
  config.validate();
  Picos period = config.pulse_period();
  Picos tof = time_of_flight_ps(distance_m);
  std::size_t n = 0;
  for (Picos t = 0; t < dwell_ps; t += period) {
    if (gate_state(t, schedule) != GateState::Emission) continue;
    Picos arrival = t + tof;
    if (arrival < dwell_ps && gate_state(arrival, schedule) == GateState::Detection) ++n;
  }
  return n;
}

double calibrate_link_constant(const SceneModel& scene, const SystemConfig& config,
                               const GatingSchedule& schedule, Picos dwell_ps,
                               double target_ppp, PixelAverage average) {
  scene.validate();
  if (!(target_ppp > 0.0)) throw InputError("calibrate_link_constant: target must be > 0");
  std::size_t pulses = detected_pulse_count(schedule, config, dwell_ps, scene.base_distance_m);
  if (pulses == 0) throw InputError("calibrate_link_constant: no pulse echo is detected in this dwell");

  SystemConfig unit = config;
  unit.link_constant = 1.0;
  double sum = 0.0;
  std::size_t denom = 0;
  for (std::size_t i = 0; i < scene.pixel_count(); ++i) {
    bool empty = scene.empty_pixel(i);
    if (average == PixelAverage::NonEmpty && empty) continue;
    ++denom;
    if (!empty) sum += expected_signal_per_pulse(i, scene, unit);
  }
  if (denom == 0 || sum <= 0.0)
    throw InputError("calibrate_link_constant: scene has no signal-bearing pixels");
  double mean_per_pulse_unit = sum / static_cast<double>(denom);
  return target_ppp / (mean_per_pulse_unit * static_cast<double>(pulses));
}

}  // namespace splidar
