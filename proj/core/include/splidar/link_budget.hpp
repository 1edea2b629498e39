#pragma once

#include <cstddef>

#include "splidar/gating.hpp"
#include "splidar/scene.hpp"
#include "splidar/system.hpp"

namespace splidar {

/// Mean detected signal photons per pulse for one pixel:
/// mu = link_constant * reflectivity * exp(-2*alpha*d) / d^2 with
/// d = base_distance + depth. Empty pixels return exactly 0.
double expected_signal_per_pulse(std::size_t pixel, const SceneModel& scene,
                                 const SystemConfig& config);

enum class PixelAverage { AllPixels, NonEmpty };

/// Pulses emitted in [0, dwell) whose echo (epoch + flight time of the base
/// plane) lands in the detection window before the dwell ends. This is the
/// per-pixel pulse count that actually contributes detected signal.
std::size_t detected_pulse_count(const GatingSchedule& schedule, const SystemConfig& config,
                                 Picos dwell_ps, double distance_m);

/// link_constant that makes the mean detected signal per pixel over the dwell
/// equal target_ppp, averaging over all or only non-empty pixels. The mean is
/// linear in link_constant, so this is a single closed-form rescale.
double calibrate_link_constant(const SceneModel& scene, const SystemConfig& config,
                               const GatingSchedule& schedule, Picos dwell_ps,
                               double target_ppp, PixelAverage average);

}  // namespace splidar
