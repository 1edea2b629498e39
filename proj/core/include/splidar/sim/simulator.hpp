#pragma once

#include "splidar/scene.hpp"
#include "splidar/sim/sampling.hpp"
#include "splidar/tcspc/events.hpp"

namespace splidar::sim {

struct AcquisitionResult {
  tcspc::EventStream stream;
  SimulatedTruth truth;
};

/// Full Monte-Carlo acquisition: per pixel, signal plus the four background
/// processes are sampled, merged and passed through gate and dead time. Each
/// pixel draws from its own seed-derived substream, so the output is
/// byte-identical for a given (scene, config, schedule, noise, plan)
/// regardless of worker count. Events are sorted by (pixel, time).
AcquisitionResult simulate_acquisition(const SceneModel& scene, const SystemConfig& config,
                                       const GatingSchedule& schedule, const NoiseModel& noise,
                                       const AcquisitionPlan& plan);

}  // namespace splidar::sim
