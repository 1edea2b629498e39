// Acceptance suite. Each criterion is a self-contained scenario selected by
// number on the command line; the binary prints one [ok]/[FAIL] line per
// assertion, then a final "criterion N: PASS|FAIL" verdict and exits nonzero
// on failure. Scenario constants (schedules, rates, photon budgets) are
// frozen; reruns are deterministic for a given criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "splidar/gating.hpp"
#include "splidar/io/event_file.hpp"
#include "splidar/link_budget.hpp"
#include "splidar/ranging/resolve.hpp"
#include "splidar/recon/pipeline.hpp"
#include "splidar/recon/quality.hpp"
#include "splidar/rng.hpp"
#include "splidar/sim/simulator.hpp"
#include "splidar/tcspc/histogram.hpp"
#include "splidar/tcspc/metrics.hpp"

using namespace splidar;

namespace {

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[768];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Checker {
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    std::printf("  [%s] %s\n", cond ? " ok " : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!cond) ok = false;
  }
  void note(const std::string& what) {
    std::printf("  [note] %s\n", what.c_str());
    std::fflush(stdout);
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool nonincreasing(const recon::TvTrace& trace) {
  for (std::size_t i = 1; i < trace.objective.size(); ++i)
    if (trace.objective[i] > trace.objective[i - 1] + 1e-9 * std::abs(trace.objective[i - 1]))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 1: duty-cycled gating suppresses pre-detection light.
//
// 200 km geometry, 2.5 ms period, 0.1 ms isolation. The backscatter peak is
// tuned so light arrives at the detector ~100x faster while the laser emits
// than while it listens; the gate must keep every recorded event inside the
// detection phase and the surviving noise floor at ~400 Hz.
// ---------------------------------------------------------------------------

bool criterion_1() {
  Checker c;
  Timer timer;
  const double distance = 200'000.0;
  GatingSchedule schedule = recommend_schedule(distance, 2'500'000'000, 100'000'000);
  c.expect(schedule.emission_ps == 1'165'743'619 && schedule.detection_ps == 1'234'256'381,
           fmt("schedule R=%lld W=%lld D=%lld ps", static_cast<long long>(schedule.emission_ps),
               static_cast<long long>(schedule.isolation_ps),
               static_cast<long long>(schedule.detection_ps)));

  SystemConfig config;  // 500 kHz, 600 ps jitter, 100 Hz DCR, 10 us dead time
  NoiseModel noise;
  noise.ambient_rate_hz = 298.0;
  noise.ase_rate_open_hz = 1000.0;  // extinguished by 57 dB outside emission
  noise.backscatter_peak_rate_hz = 3946.0;
  noise.backscatter_decay_s = 20e-6;

  // No target return: every recorded event is noise.
  SceneModel scene = testing::make_flat_scene(1, 1, distance, 0.0, 0.0);
  sim::AcquisitionPlan plan;
  plan.dwell_ps = 1'000'000'000'000;  // 1 s
  plan.seed = 260815;
  auto result = sim::simulate_acquisition(scene, config, schedule, noise, plan);

  std::size_t off_gate = 0;
  for (const auto& e : result.stream.events)
    if (gate_state(static_cast<Picos>(e.time_ps), schedule) != GateState::Detection) ++off_gate;
  c.expect(off_gate == 0, fmt("recorded events outside the detection phase: %zu of %zu "
                              "(exact zero required)",
                              off_gate, result.stream.events.size()));

  const double livetime_s = seconds_from_ps(detection_livetime_ps(schedule, plan.dwell_ps));
  const double expected = 400.0 * livetime_s;
  const double sig4 = 4.0 * std::sqrt(expected);
  const double n = static_cast<double>(result.stream.events.size());
  c.expect(std::abs(n - expected) <= sig4,
           fmt("detection-phase noise: %.0f counts / %.4f s live = %.1f Hz "
               "(400 Hz -> %.1f +- %.1f counts at 4 sigma)",
               n, livetime_s, n / livetime_s, expected, sig4));

  const auto& px = result.truth.pixels[0];
  std::uint64_t arrivals = 0;
  for (auto a : px.arrivals) arrivals += a;
  const std::uint64_t gated = px.gated_total();
  const double emiso_s = seconds_from_ps(plan.dwell_ps) - livetime_s;
  const double rate_out = static_cast<double>(arrivals - gated) / emiso_s;
  const double rate_in = static_cast<double>(gated) / livetime_s;
  const double ratio = rate_out / rate_in;
  // Tuned to 100x over the emission window alone; averaged over emission plus
  // the dim isolation gap the expected readout is 93.7x, +-4 sigma counting.
  c.expect(ratio > 67.0 && ratio < 120.0,
           fmt("arrival rate outside detection %.0f Hz vs inside %.1f Hz: %.1fx "
               "(tuned ~100x; 93.7x expected over emission+isolation)",
               rate_out, rate_in, ratio));

  const double el = timer.elapsed_s();
  c.expect(el < 10.0, fmt("runtime %.2f s (budget 10 s)", el));
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criteria 2/3 scene fixtures: 64x64 desk-scale crops whose photon budgets
// (signal per pixel, signal-to-background ratio) match the three published
// operating points. Background is a flat detected rate; the link constant is
// calibrated so the mean detected signal hits the target.
// ---------------------------------------------------------------------------

struct SceneSpec {
  const char* name;
  std::uint32_t size;
  double distance_m;
  Picos period_ps;
  Picos isolation_ps;
  Picos dwell_ps;
  double noise_rate_hz;  // flat detected background rate
  double target_ppp;
  double ppp_tol;  // relative
  double target_sbr;
  double sbr_tol;
  bool with_empty;    // empty border + blob; metrics restricted to non-empty
  double link_scale;  // compensates dead-time loss between arrival and record
  double amplitude_m;
  std::uint64_t seed;
};

SceneSpec tower_spec() {
  return {"tower 9.8 km", 64,   9'800.0, 100'000'000, 10'000'000, 1'500'000'000,
          265.1,          3.47, 0.10,    15.76,       0.10,       false,
          1.0,            2.0,  260821};
}

SceneSpec mountain_spec() {
  return {"124 km", 64,   124'000.0, 2'000'000'000, 100'000'000, 30'000'000'000,
          430.2,    3.86, 0.10,      0.51,          0.10,        true,
          1.0,      2.0,  260822};
}

SceneSpec far_spec() {
  return {"201.5 km", 64,   201'500.0, 2'500'000'000, 100'000'000, 189'700'000'000,
          947.9,      3.58, 0.10,      0.04,          0.20,        true,
          1.0,        2.0,  260823};
}

SceneSpec sparse_spec() {
  // Same geometry as the tower scene, flux lowered to 0.44 signal photons
  // per pixel at SBR ~2, every pixel backed by a real surface.
  return {"0.44 ppp", 64,   9'800.0, 100'000'000, 10'000'000, 1'500'000'000,
          265.1,      0.44, 0.10,    2.0,         0.50,       false,
          1.0,        2.0,  260824};
}

struct SceneRun {
  SceneModel scene;
  SystemConfig config;
  GatingSchedule schedule;
  Picos dwell_ps = 0;
  sim::AcquisitionResult result;
};

SceneRun run_scene(const SceneSpec& s) {
  SceneRun r;
  r.scene = testing::make_smooth_scene(s.size, s.size, s.distance_m, s.amplitude_m, s.with_empty);
  r.schedule = recommend_schedule(s.distance_m, s.period_ps, s.isolation_ps);
  r.config.dcr_hz = 0.0;  // background is carried entirely by the ambient rate
  r.config.link_constant =
      calibrate_link_constant(r.scene, r.config, r.schedule, s.dwell_ps,
                              s.target_ppp * s.link_scale,
                              s.with_empty ? PixelAverage::NonEmpty : PixelAverage::AllPixels);
  NoiseModel noise;
  noise.ambient_rate_hz = s.noise_rate_hz;
  sim::AcquisitionPlan plan;
  plan.dwell_ps = s.dwell_ps;
  plan.seed = s.seed;
  r.dwell_ps = s.dwell_ps;
  r.result = sim::simulate_acquisition(r.scene, r.config, r.schedule, noise, plan);
  return r;
}

tcspc::PictureMetrics exact_metrics(const SceneRun& r) {
  const double live = tcspc::detection_livetime(r.schedule, r.dwell_ps);
  std::vector<double> livetime(r.result.truth.pixels.size(), live);
  auto truth = r.result.truth.metrics_view();
  return tcspc::compute_metrics(truth, livetime);
}

bool criterion_2() {
  Checker c;
  const SceneSpec specs[] = {tower_spec(), mountain_spec(), far_spec()};
  for (const auto& s : specs) {
    Timer timer;
    SceneRun r = run_scene(s);
    auto m = exact_metrics(r);
    const double ppp = s.with_empty ? m.signal_ppp_nonempty : m.signal_ppp_all;
    const double sbr = s.with_empty ? m.sbr_nonempty : m.sbr_all;
    const char* scope = s.with_empty ? "non-empty" : "all pixels";
    c.expect(std::abs(ppp - s.target_ppp) <= s.ppp_tol * s.target_ppp,
             fmt("%s: signal PPP %.3f, target %.2f +- %.0f%% (%s)", s.name, ppp, s.target_ppp,
                 100.0 * s.ppp_tol, scope));
    c.expect(std::abs(sbr - s.target_sbr) <= s.sbr_tol * s.target_sbr,
             fmt("%s: SBR %.4f, target %.2f +- %.0f%% (%s)", s.name, sbr, s.target_sbr,
                 100.0 * s.sbr_tol, scope));
    c.note(fmt("%s: %zu events, noise %.1f Hz, %zu/%zu non-empty pixels", s.name,
               r.result.stream.events.size(), m.noise_rate_hz, m.nonempty_pixels,
               m.total_pixels));
    const double el = timer.elapsed_s();
    c.expect(el < 60.0, fmt("%s: runtime %.1f s (budget 60 s)", s.name, el));
  }
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criterion 3: photon-efficient depth reconstruction.
//
// (a) On the 201.5 km fixture (3.58 signal photons per pixel under 25x more
//     background), censoring + TV must put >= 90% of non-empty pixels within
//     20 cm and beat the plain matched filter by >= 10 dB PSNR.
// (b) At 0.44 signal photons per pixel (SBR ~2), >= 75% of pixels must land
//     within 30 cm even though most pixels record no photon at all.
// ---------------------------------------------------------------------------

double scene_depth_range(const SceneModel& scene) {
  float lo = 0.0f, hi = 0.0f;
  bool first = true;
  for (std::size_t p = 0; p < scene.depth_m.data.size(); ++p) {
    if (scene.reflectivity.data[p] <= 0.0f) continue;
    float d = scene.depth_m.data[p];
    lo = first ? d : std::min(lo, d);
    hi = first ? d : std::max(hi, d);
    first = false;
  }
  return static_cast<double>(hi - lo);
}

bool criterion_3() {
  Checker c;
  Timer timer;

  {
    SceneSpec s = far_spec();
    SceneRun r = run_scene(s);
    const Picos period = r.config.pulse_period();
    auto anchor = recon::anchor_from_distance(s.distance_m, period);
    recon::ReconParams params;
    params.tv_lambda = 1.0;
    recon::TvTrace trace;
    auto ctv = recon::reconstruct_censor_tv(r.result.stream, r.config, params, anchor, 0, &trace);
    auto mf = recon::reconstruct_matched_filter(r.result.stream, r.config, params, anchor, 0);

    const double fr20 = recon::fraction_within(ctv, r.scene, 0.20);
    c.expect(fr20 >= 0.90, fmt("%s: %.1f%% of non-empty pixels within 20 cm (needs >= 90%%)",
                               s.name, 100.0 * fr20));
    const double range = scene_depth_range(r.scene);
    const double p_ctv = recon::psnr(ctv, r.scene, range);
    const double p_mf = recon::psnr(mf, r.scene, range);
    c.expect(p_ctv >= p_mf + 10.0,
             fmt("%s: PSNR censor-tv %.1f dB vs matched filter %.1f dB (needs +10 dB)", s.name,
                 p_ctv, p_mf));
    c.expect(nonincreasing(trace),
             fmt("%s: TV objective nonincreasing over %zu iterations", s.name,
                 trace.objective.size()));
    c.note(fmt("%s: censor-tv RMSE %.3f m over %zu valid pixels", s.name,
               recon::depth_rmse(ctv, r.scene), ctv.valid_count()));
  }

  {
    SceneSpec s = sparse_spec();
    SceneRun r = run_scene(s);
    auto m = exact_metrics(r);
    c.expect(std::abs(m.signal_ppp_all - 0.44) <= 0.044,
             fmt("%s: fixture PPP %.3f (target 0.44 +- 10%%)", s.name, m.signal_ppp_all));
    c.expect(m.sbr_all >= 1.0, fmt("%s: fixture SBR %.2f (needs >= 1)", s.name, m.sbr_all));

    const Picos period = r.config.pulse_period();
    auto anchor = recon::anchor_from_distance(s.distance_m, period);
    recon::ReconParams params;
    params.tv_lambda = 1.0;
    recon::TvTrace trace;
    auto ctv = recon::reconstruct_censor_tv(r.result.stream, r.config, params, anchor, 0, &trace);
    const double fr30 = recon::fraction_within(ctv, r.scene, 0.30);
    c.expect(fr30 >= 0.75,
             fmt("%s: %.1f%% of pixels within 30 cm (needs >= 75%%)", s.name, 100.0 * fr30));
    c.expect(nonincreasing(trace),
             fmt("%s: TV objective nonincreasing over %zu iterations", s.name,
                 trace.objective.size()));
    c.note(fmt("%s: %zu censor-validated pixels of %zu", s.name, ctv.valid_count(),
               r.result.truth.pixels.size()));
  }

  const double el = timer.elapsed_s();
  c.expect(el < 300.0, fmt("runtime %.1f s (budget 300 s)", el));
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: multi-rate ranging precision at 163.337 km.
// 30 independent measurements, 600 ps FWHM system response, ~0.5 detected
// signal photons per pulse over a 3 ms dwell per rate.
// ---------------------------------------------------------------------------

bool criterion_4() {
  Checker c;
  Timer timer;
  const double distance = 163'337.0;
  auto rates = ranging::RateSet::defaults();
  SystemConfig config;  // 600 ps FWHM response -> 600 ps cluster window

  std::vector<ranging::RangeSolution> sols;
  for (int m = 0; m < 30; ++m) {
    auto streams = testing::simulate_range_streams(distance, rates.rep_rates_hz, 3'000'000'000,
                                                   0.5, 100.0, 400 + m);
    sols.push_back(ranging::range_measurement(streams, rates, config));
  }

  bool same_cell = true;
  for (const auto& s : sols) same_cell = same_cell && s.ambiguity_index == sols[0].ambiguity_index;
  c.expect(same_cell && sols[0].ambiguity_index == 544,
           fmt("ambiguity cell identical in all 30 measurements (index %lld, expected 544)",
               static_cast<long long>(sols[0].ambiguity_index)));

  auto prec = ranging::precision_estimate(sols);
  c.expect(prec.std_m <= 0.05, fmt("sample std %.4f m (needs <= 0.05 m)", prec.std_m));
  c.expect(std::abs(prec.mean_m - distance) <= 0.05,
           fmt("mean %.4f m vs true %.1f m (needs +- 0.05 m)", prec.mean_m, distance));

  const double el = timer.elapsed_s();
  c.expect(el < 120.0, fmt("runtime %.1f s (budget 120 s)", el));
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criterion 5: photon-starved ranging, 50 ms dwell, ~4.04 expected signal
// photons per rate, 400 Hz noise.
//
// Resolving an unambiguous range needs a significant cluster at every rate;
// at alpha = 1e-3 that takes >= 3 clustered photons, and with Poisson(4.04)
// signal per rate the per-trial success probability is bounded by
// P(N >= 3)^3 = 0.4525 before clustering losses. The >= 95/100 bar is
// therefore not reachable at this flux; the suite reports the measured rate
// honestly. The false-alarm half of the criterion is expected to pass.
// ---------------------------------------------------------------------------

std::vector<tcspc::EventStream> sparse_range_streams(double distance_m,
                                                     const ranging::RateSet& rates, Picos dwell_ps,
                                                     double signal_counts, double noise_hz,
                                                     std::uint64_t seed) {
  std::vector<tcspc::EventStream> streams;
  for (std::size_t i = 0; i < rates.rep_rates_hz.size(); ++i) {
    SystemConfig config;
    config.rep_rate_hz = rates.rep_rates_hz[i];
    config.dcr_hz = 0.0;
    GatingSchedule schedule = recommend_schedule(distance_m, config.pulse_period(), 0);
    SceneModel scene =
        testing::make_flat_scene(1, 1, distance_m, 0.0, signal_counts > 0.0 ? 1.0 : 0.0);
    const std::size_t pulses = detected_pulse_count(schedule, config, dwell_ps, distance_m);
    if (signal_counts > 0.0)
      config.link_constant = signal_counts / static_cast<double>(pulses) * distance_m * distance_m;
    NoiseModel noise;
    noise.ambient_rate_hz = noise_hz;
    sim::AcquisitionPlan plan;
    plan.dwell_ps = dwell_ps;
    plan.seed = seed * 7919 + i;
    streams.push_back(sim::simulate_acquisition(scene, config, schedule, noise, plan).stream);
  }
  return streams;
}

bool criterion_5() {
  Checker c;
  Timer timer;
  const double distance = 163'337.0;
  auto rates = ranging::RateSet::defaults();
  SystemConfig config;
  const Picos dwell = 50'000'000'000;  // 50 ms

  int correct = 0, resolved = 0;
  for (int t = 0; t < 100; ++t) {
    auto streams = sparse_range_streams(distance, rates, dwell, 4.04, 400.0, 9000 + t);
    try {
      auto sol = ranging::range_measurement(streams, rates, config);
      ++resolved;
      if (std::abs(sol.distance_m - distance) <= 0.05) ++correct;
    } catch (const NoDetectionError&) {
    } catch (const AmbiguityError&) {
    }
  }
  c.note("detection at alpha=1e-3 needs >= 3 clustered photons at every rate;");
  c.note("with Poisson(4.04) signal per rate the success ceiling is 0.7677^3 = 0.4525,");
  c.note("so the 95/100 bar is analytically out of reach at this photon budget");
  c.expect(correct >= 95, fmt("correct within 5 cm in %d/100 trials, %d resolved "
                              "(needs >= 95; ceiling ~45)",
                              correct, resolved));

  int alarms = 0;
  for (int t = 0; t < 100; ++t) {
    auto streams = sparse_range_streams(distance, rates, dwell, 0.0, 400.0, 20000 + t);
    try {
      ranging::range_measurement(streams, rates, config);
      ++alarms;
    } catch (const NoDetectionError&) {
    } catch (const AmbiguityError&) {
    }
  }
  c.expect(alarms == 0,
           fmt("false alarms on pure noise: %d/100 (budget 2 x alpha -> 0 of 100)", alarms));

  const double el = timer.elapsed_s();
  c.expect(el < 120.0, fmt("runtime %.1f s (budget 120 s)", el));
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: forward/backward ambiguity oracle. Exact residues of 1000
// random distances up to 300 km must resolve back to the same distance on
// the picosecond grid (tolerance 1 ps).
// ---------------------------------------------------------------------------

bool criterion_6() {
  Checker c;
  Timer timer;
  auto rates = ranging::RateSet::defaults();
  auto periods = rates.periods_ps();
  CounterRng rng(4242);
  int exact = 0;
  double worst = 0.0;
  std::string first_failure;
  for (int i = 0; i < 1000; ++i) {
    const double d = 150.0 + rng.uniform() * (300'000.0 - 150.0);
    const Picos tof = time_of_flight_ps(d);
    std::vector<Picos> residues;
    residues.reserve(periods.size());
    for (Picos p : periods) residues.push_back(fold_ps(tof, p));
    try {
      auto sol = ranging::resolve_ambiguity(residues, rates, 1);
      const double err = std::abs(sol.distance_m - d);
      worst = std::max(worst, err);
      // Half a picosecond of round trip is 7.5e-5 m: the exact-grid bound.
      if (err < 1.5e-4) ++exact;
      else if (first_failure.empty())
        first_failure = fmt("d=%.6f m recovered %.6f m", d, sol.distance_m);
    } catch (const std::exception& e) {
      if (first_failure.empty()) first_failure = fmt("d=%.6f m: %s", d, e.what());
    }
  }
  c.expect(exact == 1000, fmt("recovered %d/1000 random distances exactly "
                              "(worst error %.3g m)%s%s",
                              exact, worst, first_failure.empty() ? "" : "; first failure: ",
                              first_failure.c_str()));
  const double el = timer.elapsed_s();
  c.expect(el < 60.0, fmt("runtime %.1f s (budget 60 s)", el));
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criterion 7: numerical integrity.
// (a) TV objective monotone on a censor-tv run;
// (b) analytic NLL gradient matches central differences on 100 random pixels;
// (c) the streaming histogram equals an independent recount on 100 random
//     streams, for 1 and 4 workers.
// ---------------------------------------------------------------------------

bool criterion_7() {
  Checker c;
  Timer timer;

  {
    SceneSpec s = tower_spec();
    s.size = 32;
    s.target_ppp = 2.0;
    s.seed = 260825;
    SceneRun r = run_scene(s);
    auto anchor = recon::anchor_from_distance(s.distance_m, r.config.pulse_period());
    recon::ReconParams params;
    params.tv_lambda = 1.0;
    recon::TvTrace trace;
    recon::reconstruct_censor_tv(r.result.stream, r.config, params, anchor, 0, &trace);
    c.expect(!trace.objective.empty() && nonincreasing(trace),
             fmt("TV objective nonincreasing over %zu accepted iterations",
                 trace.objective.size()));
  }

  {
    recon::TvProblem prob;
    prob.width = 10;
    prob.height = 10;
    prob.period_ps = 2'000'000;
    prob.anchor = {700'000, 0.0};
    prob.sigma_ps = 254.80;  // 600 ps FWHM
    prob.folded.resize(100);
    CounterRng rng(1717);
    const Picos two_sigma = 510;
    for (auto& pix : prob.folded) {
      const int n = 1 + static_cast<int>(rng.below(6));
      for (int k = 0; k < n; ++k) {
        Picos off = static_cast<Picos>(std::llround(rng.gaussian() * prob.sigma_ps));
        off = std::clamp<Picos>(off, -two_sigma, two_sigma);
        pix.push_back(700'000 + off);
      }
    }
    const double sigma_m = prob.sigma_ps / recon::ps_per_meter();
    double max_rel = 0.0;
    for (std::size_t p = 0; p < prob.folded.size(); ++p) {
      const double z = (2.0 * rng.uniform() - 1.0) * sigma_m;
      double dz = 0.0;
      recon::pixel_nll(prob, p, z, &dz);
      const double h = 1e-5;
      const double fd =
          (recon::pixel_nll(prob, p, z + h) - recon::pixel_nll(prob, p, z - h)) / (2.0 * h);
      max_rel = std::max(max_rel, std::abs(fd - dz) / std::max(1.0, std::abs(dz)));
    }
    c.expect(max_rel <= 1e-5,
             fmt("NLL gradient vs central differences on 100 pixels: max relative "
                 "error %.3g (needs <= 1e-5)",
                 max_rel));
  }

  {
    int matched = 0;
    std::string first_failure;
    for (int s = 0; s < 100; ++s) {
      CounterRng rng = CounterRng::substream(5151, s);
      const std::uint32_t w = 1 + static_cast<std::uint32_t>(rng.below(8));
      const std::uint32_t h = 1 + static_cast<std::uint32_t>(rng.below(8));
      const Picos period = 1'000 + static_cast<Picos>(rng.below(9'000));
      const Picos bw = 1 + static_cast<Picos>(rng.below(300));
      const std::uint64_t dwell = 20'000 + rng.below(1'000'000);
      const std::size_t n = rng.below(2'000);
      std::vector<tcspc::PhotonEvent> events(n);
      for (auto& e : events) {
        e.pixel = static_cast<std::uint32_t>(rng.below(w * h));
        e.time_ps = rng.below(dwell);
      }
      auto stream = testing::make_stream(w, h, dwell, 1e6, std::move(events));
      auto hist1 = tcspc::build_histograms(stream, period, bw, 1);
      auto hist4 = tcspc::build_histograms(stream, period, bw, 4);
      std::vector<std::uint32_t> manual(hist1.counts.size(), 0);
      for (const auto& e : stream.events)
        manual[e.pixel * hist1.nbins + tcspc::bin_of(tcspc::fold(e.time_ps, period), bw)]++;
      if (manual == hist1.counts && hist1.counts == hist4.counts) {
        ++matched;
      } else if (first_failure.empty()) {
        first_failure = fmt("stream %d (%ux%u, period %lld, bin %lld)", s, w, h,
                            static_cast<long long>(period), static_cast<long long>(bw));
      }
    }
    c.expect(matched == 100, fmt("histogram equals independent recount on %d/100 random "
                                 "streams (1 and 4 workers)%s%s",
                                 matched, first_failure.empty() ? "" : "; first failure: ",
                                 first_failure.c_str()));
  }

  const double el = timer.elapsed_s();
  c.expect(el < 120.0, fmt("runtime %.1f s (budget 120 s)", el));
  return c.ok;
}

// ---------------------------------------------------------------------------
// Criterion 8: ingest throughput. Read back a 10^7-event file and build the
// per-pixel histograms within 1 s on a single worker.
// ---------------------------------------------------------------------------

bool criterion_8() {
  Checker c;
  const std::uint32_t w = 32, h = 32;
  const std::uint64_t dwell = 1'000'000'000;  // 1 ms per pixel
  const std::size_t total = 10'000'000;
  const std::size_t npix = static_cast<std::size_t>(w) * h;

  tcspc::EventStream stream;
  stream.header.width = w;
  stream.header.height = h;
  stream.header.dwell_ps = dwell;
  stream.header.rep_rate_millihz = 500'000'000;  // 500 kHz
  stream.header.schedule = GatingSchedule::make(2'000'000, 1'000'000, 0);
  stream.events.resize(total);
  std::size_t idx = 0;
  std::vector<std::uint64_t> times;
  for (std::uint32_t p = 0; p < npix; ++p) {
    const std::size_t n = total / npix + (p < total % npix ? 1 : 0);
    CounterRng rng = CounterRng::substream(33, p);
    times.resize(n);
    for (auto& t : times) t = rng.below(dwell);
    std::sort(times.begin(), times.end());
    for (auto t : times) stream.events[idx++] = {p, t};
  }

  const auto path = std::filesystem::temp_directory_path() / "splidar_acceptance_ingest.bin";
  io::write_event_stream(path, stream);
  stream = {};

  Timer timer;
  auto loaded = io::read_event_stream(path);
  auto hist = tcspc::build_histograms(loaded, 2'000'000, 100, 1);
  const double el = timer.elapsed_s();
  std::filesystem::remove(path);

  c.expect(hist.total_counts() == total,
           fmt("histogram holds all %llu counts",
               static_cast<unsigned long long>(hist.total_counts())));
  c.expect(el <= 1.0, fmt("ingest + histogram of 10^7 events: %.3f s (%.1f Mev/s, budget 1 s)",
                          el, static_cast<double>(total) / el / 1e6));
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
    return 2;
  }
  const int n = std::atoi(argv[1]);
  bool ok = false;
  try {
    switch (n) {
      case 1: ok = criterion_1(); break;
      case 2: ok = criterion_2(); break;
      case 3: ok = criterion_3(); break;
      case 4: ok = criterion_4(); break;
      case 5: ok = criterion_5(); break;
      case 6: ok = criterion_6(); break;
      case 7: ok = criterion_7(); break;
      case 8: ok = criterion_8(); break;
      default: std::fprintf(stderr, "no criterion %d\n", n); return 2;
    }
  } catch (const std::exception& e) {
    std::printf("  [FAIL] unhandled error: %s\n", e.what());
    ok = false;
  }
  std::printf("criterion %d: %s\n", n, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
