#pragma once

#include <span>
#include <vector>

#include "splidar/link_budget.hpp"
#include "splidar/rng.hpp"
#include "splidar/scene.hpp"
#include "splidar/sim/plan.hpp"
#include "splidar/system.hpp"

namespace splidar::sim {

struct TaggedArrival {
  Picos time_ps = 0;
  Source source = Source::Signal;
};

/// Pulse epochs within [0, dwell): the grid k * pulse_period restricted to
/// emission windows, strictly increasing.
std::vector<Picos> emission_epochs(const GatingSchedule& schedule, const SystemConfig& config,
                                   Picos dwell_ps);

/// Signal arrivals for one pixel: per epoch, Poisson(mu) photons at
/// epoch + ToF + jitter, jitter ~ N(0, sigma_system). Sampled by drawing the
/// Poisson total over all epochs and assigning each photon a uniform epoch,
/// which is distribution-identical and costs O(photons). Sorted; may extend
/// beyond the dwell (the detector stage drops those).
std::vector<Picos> sample_signal_arrivals(std::size_t pixel, const SceneModel& scene,
                                          const SystemConfig& config,
                                          std::span<const Picos> epochs, CounterRng rng);

/// All four background processes over [0, dwell), tagged and time-sorted:
/// ambient light and detector dark counts are homogeneous; ASE candidates at
/// the open-AOM rate are thinned to the extinguished rate outside emission
/// windows; backscatter decays exponentially after every pulse epoch.
std::vector<TaggedArrival> sample_noise_arrivals(const NoiseModel& noise,
                                                 const GatingSchedule& schedule,
                                                 const SystemConfig& config,
                                                 std::span<const Picos> epochs, Picos dwell_ps,
                                                 CounterRng rng);

struct DetectorResult {
  std::vector<TaggedArrival> recorded;
  std::array<std::uint64_t, kSourceCount> gated{};
  std::uint64_t lost_dead_time = 0;
};

/// Gate and non-paralyzable dead time: an arrival is recorded iff it falls in
/// a detection window and at least dead_time has passed since the previous
/// recorded event. Arrivals must be time-sorted.
DetectorResult apply_detector(std::span<const TaggedArrival> arrivals,
                              const GatingSchedule& schedule, const SystemConfig& config);

/// Untagged convenience wrapper returning recorded timestamps only.
std::vector<Picos> apply_detector(std::span<const Picos> arrivals, const GatingSchedule& schedule,
                                  const SystemConfig& config);

}  // namespace splidar::sim
