#include "splidar/gating.hpp"

#include <algorithm>
#include <sstream>

namespace splidar {

GateState gate_state(Picos t, const GatingSchedule& schedule) {
  schedule.validate();
  Picos tau = fold_ps(t, schedule.period_ps);
  if (tau < schedule.emission_ps) return GateState::Emission;
  if (tau < schedule.emission_ps + schedule.isolation_ps) return GateState::Isolation;
  return GateState::Detection;
}

double time_of_flight_s(double distance_m) {
  if (!(distance_m > 0.0)) throw InputError("time_of_flight: distance must be > 0");
  return 2.0 * distance_m / kSpeedOfLight;
}

Picos time_of_flight_ps(double distance_m) {
  return ps_from_seconds(time_of_flight_s(distance_m));
}

GatingSchedule recommend_schedule(double distance_m, Picos period_ps, Picos isolation_ps) {
  if (period_ps <= 0) throw InputError("recommend_schedule: period must be > 0");
  if (isolation_ps < 0 || isolation_ps >= period_ps)
    throw InputError("recommend_schedule: isolation must be in [0, period)");
  Picos phi = fold_ps(time_of_flight_ps(distance_m), period_ps);
  Picos emission = std::min(phi - isolation_ps, period_ps - phi);
  if (emission <= 0) {
    std::ostringstream os;
    os << "recommend_schedule: no emission window fits; round-trip phase " << phi
       << " ps within period " << period_ps << " ps (isolation " << isolation_ps << " ps)";
    throw InputError(os.str());
  }
  return GatingSchedule::make(period_ps, emission, isolation_ps);
}

Picos detection_livetime_ps(const GatingSchedule& schedule, Picos dwell_ps) {
  schedule.validate();
  if (dwell_ps < 0) throw InputError("detection_livetime: dwell must be >= 0");
  Picos full = dwell_ps / schedule.period_ps;
  Picos rem = dwell_ps % schedule.period_ps;
  Picos open = schedule.emission_ps + schedule.isolation_ps;
  Picos partial = std::max<Picos>(0, std::min(rem, schedule.period_ps) - open);
  return full * schedule.detection_ps + partial;
}

}  // namespace splidar
