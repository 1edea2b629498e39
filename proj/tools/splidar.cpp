#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "splidar/gating.hpp"
#include "splidar/io/atomic_file.hpp"
#include "splidar/io/config.hpp"
#include "splidar/io/event_file.hpp"
#include "splidar/io/pfm.hpp"
#include "splidar/io/scene_io.hpp"
#include "splidar/io/truth_io.hpp"
#include "splidar/ranging/resolve.hpp"
#include "splidar/recon/pipeline.hpp"
#include "splidar/recon/quality.hpp"
#include "splidar/sim/simulator.hpp"
#include "splidar/tcspc/histogram.hpp"
#include "splidar/tcspc/metrics.hpp"

namespace {

using namespace splidar;
namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct CommonOpts {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  unsigned threads = 1;
};

void add_config_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file");
  cmd->add_option("--threads", opts.threads, "worker thread cap (default 1)");
  for (const std::string& key : io::config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&opts, key](const std::string& v) { opts.overrides.emplace_back(key, v); },
        "override config key " + key);
  }
}

io::RunConfig resolve_config(const CommonOpts& opts) {
  io::RunConfig cfg;
  if (!opts.config_path.empty()) cfg = io::load_config(opts.config_path);
  for (const auto& [k, v] : opts.overrides) io::apply_override(cfg, k, v);
  cfg.validate();
  return cfg;
}

void print_metrics(const tcspc::PictureMetrics& m) {
  std::cout << "signal_ppp_all = " << fmt(m.signal_ppp_all) << "\n"
            << "signal_ppp_nonempty = " << fmt(m.signal_ppp_nonempty) << "\n"
            << "sbr_all = " << fmt(m.sbr_all) << "\n"
            << "sbr_nonempty = " << fmt(m.sbr_nonempty) << "\n"
            << "noise_rate_hz = " << fmt(m.noise_rate_hz) << "\n"
            << "nonempty_pixels = " << m.nonempty_pixels << "\n"
            << "total_pixels = " << m.total_pixels << "\n";
  if (m.blind) std::cout << "blind = 1\nblind_unreliable = " << (m.blind_unreliable ? 1 : 0) << "\n";
}

tcspc::StreamHeader make_header(const io::RunConfig& cfg, const SceneModel& scene, Picos dwell) {
  tcspc::StreamHeader h;
  h.width = scene.width;
  h.height = scene.height;
  h.dwell_ps = static_cast<std::uint64_t>(dwell);
  h.schedule = cfg.schedule;
  h.rep_rate_millihz = static_cast<std::uint64_t>(std::llround(cfg.system.rep_rate_hz * 1000.0));
  h.config_digest = cfg.digest();
  return h;
}

int run_simulate(const CommonOpts& opts, const std::string& scene_dir, const std::string& out) {
  io::RunConfig cfg = resolve_config(opts);
  SceneModel scene = io::read_scene(scene_dir);
  const Picos dwell = ps_from_seconds(cfg.dwell_s);
  const fs::path out_path(out);
  const fs::path truth_path = out_path.string() + ".truth.csv";

  tcspc::EventStream stream;
  sim::SimulatedTruth truth;
  if (dwell == 0) {
    // Degenerate but well-formed: header-only stream, all-zero truth.
    stream.header = make_header(cfg, scene, 0);
    truth.width = scene.width;
    truth.height = scene.height;
    truth.pixels.assign(scene.pixel_count(), sim::PixelLedger{});
    for (std::size_t p = 0; p < truth.pixels.size(); ++p)
      truth.pixels[p].nonempty = !scene.empty_pixel(p);
  } else {
    sim::AcquisitionPlan plan;
    plan.dwell_ps = dwell;
    plan.seed = cfg.seed;
    plan.n_threads = opts.threads;
    sim::AcquisitionResult res =
        sim::simulate_acquisition(scene, cfg.system, cfg.schedule, cfg.noise, plan);
    stream = std::move(res.stream);
    truth = std::move(res.truth);
    stream.header.config_digest = cfg.digest();
  }

  io::write_event_stream(out_path, stream);
  io::write_truth(truth_path, truth);

  std::vector<double> livetime(scene.pixel_count(),
                               tcspc::detection_livetime(cfg.schedule, dwell));
  auto view = truth.metrics_view();
  print_metrics(tcspc::compute_metrics(view, livetime));
  std::cout << "events = " << stream.events.size() << "\n"
            << "event_file = " << out_path.string() << "\n"
            << "truth_file = " << truth_path.string() << "\n"
            << "config_digest = " << io::hex_digest(stream.header.config_digest) << "\n";
  return 0;
}

int run_reconstruct(const CommonOpts& opts, const std::string& in, const std::string& out_dir,
                    const std::string& method, const std::string& truth_dir) {
  io::RunConfig cfg = resolve_config(opts);
  tcspc::EventStream stream = io::read_event_stream(in);
  const Picos period = stream.header.pulse_period();
  fs::create_directories(out_dir);

  SceneModel truth;
  const bool have_truth = !truth_dir.empty();
  if (have_truth) {
    truth = io::read_scene(truth_dir);
    if (truth.width != stream.header.width || truth.height != stream.header.height)
      throw InputError("truth scene dimensions do not match the event stream");
  }

  recon::DepthEstimate est;
  if (stream.events.empty()) {
    std::cerr << "warning: event stream is empty; emitting an all-invalid depth map\n";
    est = recon::DepthEstimate::zeros(stream.header.width, stream.header.height);
  } else {
    recon::DepthAnchor anchor =
        have_truth ? recon::anchor_from_distance(truth.base_distance_m, period)
                   : recon::blind_anchor(stream, cfg.recon.bin_width_ps);
    if (method == "mf") {
      est = recon::reconstruct_matched_filter(stream, cfg.system, cfg.recon, anchor,
                                              opts.threads);
    } else if (method == "censor-tv") {
      est = recon::reconstruct_censor_tv(stream, cfg.system, cfg.recon, anchor, opts.threads);
    } else {
      throw CLI::ValidationError("--method", "unknown method '" + method + "'");
    }
  }

  const fs::path dir(out_dir);
  io::write_pfm(dir / "depth.pfm", est.depth_m);
  io::write_pfm(dir / "confidence.pfm", est.confidence);
  io::write_pgm(dir / "mask.pgm", est.valid_mask);

  std::string report;
  report += "method = " + method + "\n";
  report += "events = " + std::to_string(stream.events.size()) + "\n";
  report += "valid_pixels = " + std::to_string(est.valid_count()) + "\n";
  report += "total_pixels = " + std::to_string(stream.header.pixel_count()) + "\n";
  if (have_truth && est.valid_count() > 0) {
    float lo = 0.0f, hi = 0.0f;
    bool first = true;
    for (std::size_t p = 0; p < truth.pixel_count(); ++p) {
      if (truth.empty_pixel(p)) continue;
      float d = truth.depth_m.data[p];
      lo = first ? d : std::min(lo, d);
      hi = first ? d : std::max(hi, d);
      first = false;
    }
    const double range = std::max(1.0, static_cast<double>(hi - lo));
    report += "depth_range_m = " + fmt(range) + "\n";
    report += "rmse_m = " + fmt(recon::depth_rmse(est, truth)) + "\n";
    report += "psnr_db = " + fmt(recon::psnr(est, truth, range)) + "\n";
    report += "fraction_within_20cm = " + fmt(recon::fraction_within(est, truth, 0.20)) + "\n";
  }
  io::atomic_write_text(dir / "report.txt", report);
  std::cout << report;
  return 0;
}

int run_range(const CommonOpts& opts, const std::vector<std::string>& files) {
  io::RunConfig cfg = resolve_config(opts);
  const std::size_t nrates = cfg.rates.rep_rates_hz.size();
  if (files.size() < nrates || files.size() % nrates != 0)
    throw InputError("range: expected a multiple of " + std::to_string(nrates) +
                     " event files (one per rate, measurements grouped in rate order)");

  ranging::RangingOptions ropts;
  ropts.tol_ps = cfg.ranging_tol_ps;
  ropts.alpha = cfg.recon.significance_alpha;

  std::vector<ranging::RangeSolution> sols;
  for (std::size_t m = 0; m < files.size() / nrates; ++m) {
    std::vector<tcspc::EventStream> streams;
    streams.reserve(nrates);
    for (std::size_t i = 0; i < nrates; ++i)
      streams.push_back(io::read_event_stream(files[m * nrates + i]));
    ranging::RangeSolution sol = ranging::range_measurement(streams, cfg.rates, cfg.system, ropts);
    std::cout << "distance_m = " << fmt(sol.distance_m) << "\n"
              << "residual_rms_ps = " << fmt(sol.residual_rms_ps) << "\n"
              << "photons_used = " << sol.photons_used << "\n"
              << "p_value = " << fmt(sol.significance) << "\n"
              << "ambiguity_index = " << sol.ambiguity_index << "\n";
    std::cout << "residues_ps =";
    for (Picos r : sol.residues_ps) std::cout << " " << r;
    std::cout << "\n";
    sols.push_back(std::move(sol));
  }
  if (sols.size() >= 2) {
    ranging::RangePrecision prec = ranging::precision_estimate(sols);
    std::cout << "measurements = " << sols.size() << "\n"
              << "mean_m = " << fmt(prec.mean_m) << "\n"
              << "std_m = " << fmt(prec.std_m) << "\n";
  }
  return 0;
}

int run_metrics(const CommonOpts& opts, const std::string& in, const std::string& truth_csv) {
  io::RunConfig cfg = resolve_config(opts);
  tcspc::EventStream stream = io::read_event_stream(in);
  const Picos dwell = static_cast<Picos>(stream.header.dwell_ps);

  if (!truth_csv.empty()) {
    sim::SimulatedTruth truth = io::read_truth(truth_csv);
    if (truth.width != stream.header.width || truth.height != stream.header.height)
      throw InputError("truth sidecar dimensions do not match the event stream");
    std::vector<double> livetime(truth.pixels.size(),
                                 tcspc::detection_livetime(stream.header.schedule, dwell));
    auto view = truth.metrics_view();
    print_metrics(tcspc::compute_metrics(view, livetime));
    return 0;
  }

  const Picos period = stream.header.pulse_period();
  const Picos bw = cfg.recon.bin_width_ps;
  const std::size_t nbins = static_cast<std::size_t>((period + bw - 1) / bw);
  if (stream.header.pixel_count() * nbins > (std::size_t{1} << 28))
    throw InputError("metrics: histogram would exceed the memory budget; raise bin_width_ps");
  tcspc::FoldedHistogram hist = tcspc::build_histograms(stream, period, bw, opts.threads);
  tcspc::BlindWindow window;
  window.window_half_ps = recon::censor_time_radius(cfg.system, cfg.recon);
  window.alpha = cfg.recon.significance_alpha;
  print_metrics(tcspc::compute_metrics(hist, window));
  return 0;
}

int run_schedule(const CommonOpts& opts, double distance_m) {
  io::RunConfig cfg = resolve_config(opts);
  GatingSchedule rec =
      recommend_schedule(distance_m, cfg.schedule.period_ps, cfg.schedule.isolation_ps);
  const Picos tof = time_of_flight_ps(distance_m);
  std::cout << "distance_m = " << fmt(distance_m) << "\n"
            << "time_of_flight_ps = " << tof << "\n"
            << "arrival_phase_ps = " << fold_ps(tof, rec.period_ps) << "\n"
            << "gate_period_ps = " << rec.period_ps << "\n"
            << "gate_emission_ps = " << rec.emission_ps << "\n"
            << "gate_isolation_ps = " << rec.isolation_ps << "\n"
            << "gate_detection_ps = " << rec.detection_ps << "\n"
            << "duty_fraction = "
            << fmt(static_cast<double>(rec.emission_ps) / static_cast<double>(rec.period_ps))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon lidar simulation, reconstruction and ranging toolkit"};
  app.require_subcommand(1);

  CommonOpts sim_opts, rec_opts, rng_opts, met_opts, sch_opts;

  auto* sim = app.add_subcommand("simulate", "Generate a timestamp stream from a scene");
  std::string scene_dir, sim_out;
  sim->add_option("--scene", scene_dir, "scene directory")->required();
  sim->add_option("--out", sim_out, "output event file")->required();
  add_config_options(sim, sim_opts);

  auto* rec = app.add_subcommand("reconstruct", "Reconstruct a depth map from an event file");
  std::string rec_in, rec_out, rec_method = "censor-tv", rec_truth;
  rec->add_option("--in", rec_in, "event file")->required();
  rec->add_option("--out", rec_out, "output directory")->required();
  rec->add_option("--method", rec_method, "mf | censor-tv")
      ->check(CLI::IsMember({"mf", "censor-tv"}));
  rec->add_option("--truth-scene", rec_truth, "scene directory for anchoring and PSNR");
  add_config_options(rec, rec_opts);

  auto* rng = app.add_subcommand("range", "Resolve absolute distance from per-rate event files");
  std::vector<std::string> rng_files;
  rng->add_option("files", rng_files, "event files, one per rate, measurements grouped")
      ->required()
      ->expected(-2);
  add_config_options(rng, rng_opts);

  auto* met = app.add_subcommand("metrics", "Report photon budget metrics for an event file");
  std::string met_in, met_truth;
  met->add_option("--in", met_in, "event file")->required();
  met->add_option("--truth", met_truth, "truth sidecar CSV for exact metrics");
  add_config_options(met, met_opts);

  auto* sch = app.add_subcommand("schedule", "Print the widest feasible gating schedule");
  double sch_distance = 0.0;
  sch->add_option("--distance_m", sch_distance, "target distance in meters")->required();
  add_config_options(sch, sch_opts);

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return run_simulate(sim_opts, scene_dir, sim_out);
    if (rec->parsed()) return run_reconstruct(rec_opts, rec_in, rec_out, rec_method, rec_truth);
    if (rng->parsed()) return run_range(rng_opts, rng_files);
    if (met->parsed()) return run_metrics(met_opts, met_in, met_truth);
    if (sch->parsed()) return run_schedule(sch_opts, sch_distance);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const splidar::NoDetectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const splidar::AmbiguityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
