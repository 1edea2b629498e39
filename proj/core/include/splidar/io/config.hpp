#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "splidar/ranging/rate_set.hpp"
#include "splidar/recon/params.hpp"
#include "splidar/system.hpp"

namespace splidar::io {

/// Every tunable in one flat bag: instrument, gating schedule, noise model,
/// reconstruction and ranging parameters, plus the acquisition dwell/seed.
/// Loaded from "key = value" text; unknown or duplicate keys are rejected and
/// every value is validated on load.
struct RunConfig {
  SystemConfig system;
  GatingSchedule schedule = GatingSchedule::make(2'000'000'000, 1'000'000'000, 200'000'000);
  NoiseModel noise;
  recon::ReconParams recon;
  ranging::RateSet rates = ranging::RateSet::defaults();
  Picos ranging_tol_ps = 2000;
  double dwell_s = 0.05;
  std::uint64_t seed = 1;

  void validate() const;

  /// Canonical "key = value" text with every key present, keys sorted;
  /// parsing it back reproduces the config exactly.
  std::string canonical_text() const;

  /// SHA-256 of canonical_text(), embedded in event files so a stream can be
  /// matched to the exact configuration that produced it.
  std::array<std::uint8_t, 32> digest() const;
};

/// All recognized keys, sorted; the single source of truth for parsing,
/// overrides and canonical serialization.
std::vector<std::string> config_keys();

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config(const std::filesystem::path& path);

/// One "--key value" override; throws InputError for unknown keys.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

std::string hex_digest(const std::array<std::uint8_t, 32>& digest);

}  // namespace splidar::io
