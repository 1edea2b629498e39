#pragma once

#include "splidar/common.hpp"
#include "splidar/system.hpp"

namespace splidar {

/// Phase of absolute time t within the schedule. t may exceed one period and
/// may be negative; only t mod T matters.
GateState gate_state(Picos t, const GatingSchedule& schedule);

/// Round-trip flight time 2d/c for a target at distance_m > 0.
double time_of_flight_s(double distance_m);
Picos time_of_flight_ps(double distance_m);

/// Largest emission window R such that every pulse emitted in [0, R) returns
/// inside the detection window of the same period: with phase
/// phi = ToF mod T, both R + W <= phi and phi + R <= T must hold.
/// Throws InputError when no positive R exists for this geometry.
GatingSchedule recommend_schedule(double distance_m, Picos period_ps, Picos isolation_ps);

/// Detection-mode exposure within [0, dwell), exact in picoseconds.
Picos detection_livetime_ps(const GatingSchedule& schedule, Picos dwell_ps);

}  // namespace splidar
