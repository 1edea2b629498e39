#include <doctest.h>

#include <cmath>

#include "splidar/gating.hpp"
#include "splidar/rng.hpp"
#include "splidar/tcspc/histogram.hpp"

using namespace splidar;

TEST_CASE("time_of_flight known round trips") {
  // 2d/c on the picosecond grid, c = 299792458 m/s exact
  CHECK(time_of_flight_ps(200000.0) == 1334256381);
  CHECK(time_of_flight_ps(0.149896229) == 1000);
  CHECK(time_of_flight_ps(9800.0) == 65378563);
  CHECK(time_of_flight_ps(113600.0) == 757857624);
  CHECK(time_of_flight_ps(163337.0) == 1089667172);
  CHECK(time_of_flight_s(200000.0) == doctest::Approx(1.334256381e-3).epsilon(1e-12));
  CHECK_THROWS_AS(time_of_flight_ps(0.0), InputError);
  CHECK_THROWS_AS(time_of_flight_ps(-5.0), InputError);
}

TEST_CASE("gate_state period phases") {
  auto s = GatingSchedule::make(2'500'000'000, 1'200'000'000, 100'000'000);
  CHECK(gate_state(0, s) == GateState::Emission);
  CHECK(gate_state(1'350'000'000, s) == GateState::Detection);
  // 3.75 ms wraps to 1.25 ms, inside the isolation slot [1.2, 1.3) ms
  CHECK(gate_state(3'750'000'000, s) == GateState::Isolation);
  CHECK(gate_state(1'199'999'999, s) == GateState::Emission);
  CHECK(gate_state(1'200'000'000, s) == GateState::Isolation);
  CHECK(gate_state(1'300'000'000, s) == GateState::Detection);
  CHECK(gate_state(2'499'999'999, s) == GateState::Detection);
  CHECK(gate_state(2'500'000'000, s) == GateState::Emission);
}

TEST_CASE("gate_state partitions the period in measure") {
  auto s = GatingSchedule::make(2'500'000'000, 1'200'000'000, 100'000'000);
  CounterRng rng(42);
  const int n = 1'000'000;
  std::int64_t counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    Picos t = static_cast<Picos>(rng.below(10ull * s.period_ps));
    counts[static_cast<int>(gate_state(t, s))]++;
  }
  double fr[3] = {double(s.emission_ps), double(s.isolation_ps), double(s.detection_ps)};
  for (int k = 0; k < 3; ++k) {
    double expected = fr[k] / double(s.period_ps);
    CHECK(std::abs(double(counts[k]) / n - expected) < 0.01);
  }
}

TEST_CASE("schedule invariants") {
  CHECK_THROWS_AS(GatingSchedule::make(0, 0, 0), InputError);
  CHECK_THROWS_AS(GatingSchedule::make(100, 101, 0), InputError);
  GatingSchedule bad{100, 30, 30, 50};  // R+W+D != T
  CHECK_THROWS_AS(bad.validate(), InputError);
  auto ok = GatingSchedule::make(100, 30, 30);
  CHECK(ok.detection_ps == 40);
}

TEST_CASE("recommend_schedule maximizes emission under phase containment") {
  // R = min(phi - W, T - phi) with phi the round-trip phase
  auto s200 = recommend_schedule(200000.0, 2'500'000'000, 100'000'000);
  CHECK(s200.emission_ps == 1'165'743'619);
  CHECK(s200.isolation_ps == 100'000'000);
  CHECK(s200.detection_ps == 1'234'256'381);
  CHECK(s200.period_ps == 2'500'000'000);

  auto s113 = recommend_schedule(113600.0, 1'500'000'000, 100'000'000);
  CHECK(s113.emission_ps == 657'857'624);

  // every pulse phase in [0, R) arrives inside the detection window
  for (const auto& sched : {s200, s113}) {
    Picos tof = time_of_flight_ps(sched.period_ps == 2'500'000'000 ? 200000.0 : 113600.0);
    for (Picos e : {Picos{0}, sched.emission_ps / 3, sched.emission_ps - 1})
      CHECK(gate_state(e + tof, sched) == GateState::Detection);
  }
}

TEST_CASE("recommend_schedule rejects infeasible phase") {
  // phase exactly W leaves no emission room
  Picos T = 1'000'000;
  Picos phi = 300'000;
  double d = kSpeedOfLight * static_cast<double>(phi) / (2.0 * kPsPerSecond);
  REQUIRE(time_of_flight_ps(d) % T == phi);
  CHECK_THROWS_AS(recommend_schedule(d, T, phi), InputError);
  try {
    recommend_schedule(d, T, phi);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("300000") != std::string::npos);
  }
}

TEST_CASE("detection_livetime") {
  auto s = GatingSchedule::make(2'500'000'000, 1'200'000'000, 100'000'000);
  CHECK(detection_livetime_ps(s, 5 * s.period_ps) == 5 * s.detection_ps);
  CHECK(detection_livetime_ps(s, 1'350'000'000) == 50'000'000);
  CHECK(detection_livetime_ps(s, 0) == 0);
  auto no_det = GatingSchedule::make(1000, 600, 400);
  CHECK(detection_livetime_ps(no_det, 123456789) == 0);
  // seconds-valued variant used by histogram livetime accounting
  CHECK(tcspc::detection_livetime(s, 2'500'000'000) == doctest::Approx(1.2e-3));
}

TEST_CASE("fold basics") {
  CHECK(tcspc::fold(2'700'000, 2'000'000) == 700'000);
  CHECK(tcspc::fold(65'378'563, 2'000'000) == 1'378'563);
  CHECK(tcspc::fold(1'999'999, 2'000'000) == 1'999'999);
  CHECK(tcspc::fold(tcspc::fold(123'456'789, 777), 777) == tcspc::fold(123'456'789, 777));
  CHECK_THROWS(tcspc::fold(1, 0));
}
