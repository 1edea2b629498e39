#include "splidar/system.hpp"

#include <string>

namespace splidar {

const char* to_string(GateState s) {
  switch (s) {
    case GateState::Emission: return "emission";
    case GateState::Isolation: return "isolation";
    case GateState::Detection: return "detection";
  }
  return "?";
}

void GatingSchedule::validate() const {
  if (period_ps <= 0) throw InputError("GatingSchedule: period must be > 0");
  if (emission_ps < 0 || isolation_ps < 0 || detection_ps < 0)
    throw InputError("GatingSchedule: durations must be >= 0");
  if (emission_ps + isolation_ps + detection_ps != period_ps)
    throw InputError("GatingSchedule: R + W + D must equal T exactly (whole picoseconds)");
}

void SystemConfig::validate() const {
  if (!(rep_rate_hz > 0.0)) throw InputError("SystemConfig: rep_rate must be > 0");
  if (pulse_fwhm_s < 0.0 || detector_jitter_fwhm_s < 0.0 || system_jitter_fwhm_s < 0.0)
    throw InputError("SystemConfig: widths must be >= 0");
  if (!(pde > 0.0) || pde > 1.0) throw InputError("SystemConfig: pde must be in (0, 1]");
  if (dcr_hz < 0.0) throw InputError("SystemConfig: dcr must be >= 0");
  if (dead_time_s < 0.0) throw InputError("SystemConfig: dead_time must be >= 0");
  if (link_constant < 0.0) throw InputError("SystemConfig: link_constant must be >= 0");
  if (attenuation_per_m < 0.0) throw InputError("SystemConfig: attenuation must be >= 0");
}

void NoiseModel::validate() const {
  if (ambient_rate_hz < 0.0 || ase_rate_open_hz < 0.0 || backscatter_peak_rate_hz < 0.0)
    throw InputError("NoiseModel: rates must be >= 0");
  if (aom_extinction_db < 0.0) throw InputError("NoiseModel: extinction must be >= 0 dB");
  if (backscatter_peak_rate_hz > 0.0 && !(backscatter_decay_s > 0.0))
    throw InputError("NoiseModel: backscatter decay must be > 0");
}

}  // namespace splidar
