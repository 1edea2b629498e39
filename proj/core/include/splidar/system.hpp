#pragma once

#include <cstdint>

#include "splidar/common.hpp"

namespace splidar {

/// Phase of the duty-cycled acquisition period.
enum class GateState : std::uint8_t { Emission, Isolation, Detection };

const char* to_string(GateState s);

/// One acquisition period: emission [0,R), isolation [R,R+W), detection
/// [R+W,T). Durations are whole picoseconds and must satisfy R+W+D == T.
struct GatingSchedule {
  Picos period_ps = 0;     // T
  Picos emission_ps = 0;   // R
  Picos isolation_ps = 0;  // W
  Picos detection_ps = 0;  // D

  /// Throws InputError unless T > 0, all durations >= 0 and R+W+D == T.
  void validate() const;

  static GatingSchedule make(Picos period, Picos emission, Picos isolation) {
    GatingSchedule s{period, emission, isolation, period - emission - isolation};
    s.validate();
    return s;
  }

  double period_s() const { return seconds_from_ps(period_ps); }
  double detection_s() const { return seconds_from_ps(detection_ps); }
};

/// Instrument parameters. Rates are detected rates: the photon detection
/// efficiency is already folded into link_constant and the noise rates.
struct SystemConfig {
  double rep_rate_hz = 500e3;
  double pulse_fwhm_s = 600e-12;
  double detector_jitter_fwhm_s = 180e-12;
  /// Overall timing response (pulse shape + detector jitter + electronics),
  /// applied to every signal arrival.
  double system_jitter_fwhm_s = 600e-12;
  double pde = 0.193;
  double dcr_hz = 100.0;
  double dead_time_s = 10e-6;
  /// mu(x) = link_constant * reflectivity(x) * exp(-2*alpha*d(x)) / d(x)^2,
  /// in detected photons per pulse; absorbs power, aperture and PDE.
  double link_constant = 1.0;
  double attenuation_per_m = 0.0;

  void validate() const;

  double system_jitter_sigma_s() const { return sigma_from_fwhm(system_jitter_fwhm_s); }
  Picos dead_time_ps() const { return ps_from_seconds(dead_time_s); }
  Picos pulse_period() const { return pulse_period_ps(rep_rate_hz); }
};

/// Detected-rate model of the four background processes. The AOM transmits
/// during emission and is driven to extinction otherwise.
struct NoiseModel {
  double ambient_rate_hz = 0.0;           // constant
  double ase_rate_open_hz = 0.0;          // while the AOM is open (emission)
  double aom_extinction_db = 57.0;        // open -> closed suppression
  double backscatter_peak_rate_hz = 0.0;  // at each pulse epoch
  double backscatter_decay_s = 50e-6;     // exponential tail constant

  void validate() const;

  double ase_rate_closed_hz() const {
    return ase_rate_open_hz * std::pow(10.0, -aom_extinction_db / 10.0);
  }
};

}  // namespace splidar
