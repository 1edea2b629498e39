#include "splidar/ranging/resolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "splidar/tcspc/histogram.hpp"

namespace splidar::ranging {

RangeSolution resolve_ambiguity(std::span<const Picos> residues, const RateSet& rates,
                                Picos tol_ps) {
  rates.validate();
  if (residues.size() != rates.rep_rates_hz.size())
    throw InputError("resolve_ambiguity: one residue per rate required");
  if (tol_ps <= 0) throw InputError("resolve_ambiguity: tol must be > 0");

  const std::vector<Picos> periods = rates.periods_ps();
  for (std::size_t i = 0; i < residues.size(); ++i)
    if (residues[i] < 0 || residues[i] >= periods[i])
      throw InputError("resolve_ambiguity: residue outside [0, period) at rate " +
                       std::to_string(i));

  const double round_trip_ps = 2.0 * rates.max_range_m / kSpeedOfLight * kPsPerSecond;
  const std::int64_t n1_max =
      static_cast<std::int64_t>(std::ceil(round_trip_ps / static_cast<double>(periods[0])));

  struct Candidate {
    std::int64_t n1;
    Picos tof_ps;
    double rms_ps;
  };
  std::vector<Candidate> accepted;
  for (std::int64_t n1 = 0; n1 <= n1_max; ++n1) {
    const Picos tof = n1 * periods[0] + residues[0];
    double ss = 0.0;
    bool ok = true;
    for (std::size_t i = 1; i < periods.size(); ++i) {
      const Picos d = circ_dist_ps(fold_ps(tof, periods[i]), residues[i], periods[i]);
      if (d > tol_ps) {
        ok = false;
        break;
      }
      ss += static_cast<double>(d) * static_cast<double>(d);
    }
    if (ok)
      accepted.push_back({n1, tof, std::sqrt(ss / static_cast<double>(periods.size()))});
  }

  if (accepted.empty())
    throw InputError("resolve_ambiguity: inconsistent residues (no period count matches all "
                     "rates within tolerance)");
  if (accepted.size() > 1) {
    std::sort(accepted.begin(), accepted.end(), [](const Candidate& a, const Candidate& b) {
      return a.rms_ps != b.rms_ps ? a.rms_ps < b.rms_ps : a.tof_ps < b.tof_ps;
    });
    std::string msg = "resolve_ambiguity: ambiguous residues; candidate distances";
    for (const Candidate& c : accepted) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " %.3f", static_cast<double>(c.tof_ps) / kPsPerSecond *
                                                  kSpeedOfLight / 2.0);
      msg += buf;
      msg += " m";
    }
    msg += "; add rates or tighten tol";
    throw AmbiguityError(msg);
  }

  const Candidate& c = accepted.front();
  RangeSolution sol;
  sol.distance_m = static_cast<double>(c.tof_ps) / kPsPerSecond * kSpeedOfLight / 2.0;
  sol.residues_ps.assign(residues.begin(), residues.end());
  sol.residual_rms_ps = c.rms_ps;
  sol.ambiguity_index = c.n1;
  return sol;
}

RangeSolution range_measurement(std::span<const tcspc::EventStream> streams,
                                const RateSet& rates, const SystemConfig& config,
                                const RangingOptions& options) {
  rates.validate();
  config.validate();
  if (streams.size() != rates.rep_rates_hz.size())
    throw InputError("range_measurement: one event stream per rate required");

  const Picos window =
      options.window_ps > 0 ? options.window_ps : ps_from_seconds(config.system_jitter_fwhm_s);
  const std::vector<Picos> periods = rates.periods_ps();

  std::vector<Picos> residues(periods.size());
  std::uint64_t photons = 0;
  double worst_p = 0.0;
  std::vector<Picos> folded;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const tcspc::EventStream& s = streams[i];
    const Picos header_period = s.header.pulse_period();
    if (header_period != periods[i]) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "range_measurement: stream %zu was not acquired at rate %.6g Hz "
                    "(pulse period %lld ps, expected %lld ps)",
                    i, rates.rep_rates_hz[i], static_cast<long long>(header_period),
                    static_cast<long long>(periods[i]));
      throw InputError(buf);
    }
    folded.clear();
    folded.reserve(s.events.size());
    for (const auto& e : s.events) folded.push_back(tcspc::fold(e.time_ps, periods[i]));
    ClusterDetection det = detect_cluster(folded, periods[i], window, -1.0, options.alpha);
    if (!det.detected) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "range_measurement: no significant cluster at rate %.0f Hz "
                    "(best count %zu, p=%.3g)",
                    rates.rep_rates_hz[i], det.count, det.p_value);
      throw NoDetectionError(buf);
    }
    residues[i] = det.residue_ps;
    photons += det.count;
    worst_p = std::max(worst_p, det.p_value);
  }

  RangeSolution sol = resolve_ambiguity(residues, rates, options.tol_ps);
  sol.photons_used = photons;
  sol.significance = worst_p;
  return sol;
}

RangePrecision precision_estimate(std::span<const RangeSolution> measurements) {
  if (measurements.size() < 2)
    throw InputError("precision_estimate: need at least two measurements");
  for (const auto& m : measurements)
    if (m.ambiguity_index != measurements.front().ambiguity_index)
      throw InputError("precision_estimate: measurements resolved different ambiguity cells");
  double mean = 0.0;
  for (const auto& m : measurements) mean += m.distance_m;
  mean /= static_cast<double>(measurements.size());
  double ss = 0.0;
  for (const auto& m : measurements) {
    const double d = m.distance_m - mean;
    ss += d * d;
  }
  RangePrecision p;
  p.mean_m = mean;
  p.std_m = std::sqrt(ss / static_cast<double>(measurements.size() - 1));
  return p;
}

}  // namespace splidar::ranging
