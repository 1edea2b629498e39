#pragma once

#include <span>
#include <vector>

#include "splidar/ranging/cluster.hpp"
#include "splidar/ranging/rate_set.hpp"
#include "splidar/system.hpp"
#include "splidar/tcspc/events.hpp"

namespace splidar::ranging {

struct RangingOptions {
  Picos tol_ps = 2000;   // residue agreement tolerance (> 3x system FWHM)
  double alpha = 1e-3;   // cluster significance level
  Picos window_ps = 0;   // cluster window; 0 -> system response FWHM
};

/// Brute-force search over whole periods of the first rate: candidate round
/// trips n1*P1 + r1 are kept when every other rate's residue agrees within
/// tol. Exactly one surviving candidate is returned; zero raises InputError
/// ("inconsistent"), two or more raise AmbiguityError listing the candidate
/// distances.
RangeSolution resolve_ambiguity(std::span<const Picos> residues, const RateSet& rates,
                                Picos tol_ps);

/// Full ranging chain for one measurement: fold each stream by its pulse
/// period, detect the photon cluster per rate, then resolve the ambiguity.
/// Raises NoDetectionError naming the first rate whose stream has no
/// significant cluster.
RangeSolution range_measurement(std::span<const tcspc::EventStream> streams,
                                const RateSet& rates, const SystemConfig& config,
                                const RangingOptions& options = {});

/// Sample mean and unbiased standard deviation over repeated measurements.
/// All solutions must sit in the same ambiguity cell.
struct RangePrecision {
  double mean_m = 0.0;
  double std_m = 0.0;
};
RangePrecision precision_estimate(std::span<const RangeSolution> measurements);

}  // namespace splidar::ranging
