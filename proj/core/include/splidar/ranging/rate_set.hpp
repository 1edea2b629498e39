#pragma once

#include <cstdint>
#include <vector>

#include "splidar/common.hpp"

namespace splidar::ranging {

/// Repetition rates used to disambiguate absolute range. The combined
/// unambiguous span (LCM of the pulse periods on the picosecond grid) must
/// cover the round trip to max_range.
struct RateSet {
  std::vector<double> rep_rates_hz;
  double max_range_m = 300000.0;

  std::vector<Picos> periods_ps() const;
  void validate() const;

  /// Periods pairwise near-coprime on the ps grid; the smallest joint ghost
  /// (a wrong period count agreeing at every other rate) is 67.8 ns away,
  /// far beyond the 2 ns residue tolerance.
  static RateSet defaults();
};

/// One resolved absolute range.
struct RangeSolution {
  double distance_m = 0.0;
  std::vector<Picos> residues_ps;   // measured fold time per rate
  double residual_rms_ps = 0.0;     // rms circular mismatch of the solution
  std::uint64_t photons_used = 0;
  double significance = 1.0;        // worst per-rate cluster p-value
  std::int64_t ambiguity_index = 0; // whole periods of the first rate
};

}  // namespace splidar::ranging
