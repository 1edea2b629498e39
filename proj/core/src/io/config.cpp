#include "splidar/io/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>

#include "splidar/io/kv.hpp"

namespace splidar::io {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt_double(v[i]);
  }
  return s;
}

struct KeyEntry {
  std::string (*get)(const RunConfig&);
  void (*set)(RunConfig&, const std::string&, const std::string&);
};

// Unit-suffixed keys map onto the SI-unit fields; picosecond keys are exact
// integers, everything else round-trips through %.17g.
#define SCALED_DOUBLE(member, scale)                                         \
  {                                                                          \
    [](const RunConfig& c) { return fmt_double(c.member / (scale)); },       \
        [](RunConfig& c, const std::string& k, const std::string& v) {       \
          c.member = kv_double(k, v) * (scale);                              \
        }                                                                    \
  }
#define PICOS_FIELD(member)                                                  \
  {                                                                          \
    [](const RunConfig& c) { return std::to_string(c.member); },             \
        [](RunConfig& c, const std::string& k, const std::string& v) {       \
          c.member = static_cast<Picos>(kv_int(k, v));                       \
        }                                                                    \
  }

const std::vector<std::pair<std::string, KeyEntry>>& registry() {
  static const std::vector<std::pair<std::string, KeyEntry>> table = {
      {"ambient_rate_hz", SCALED_DOUBLE(noise.ambient_rate_hz, 1.0)},
      {"aom_extinction_db", SCALED_DOUBLE(noise.aom_extinction_db, 1.0)},
      {"ase_rate_open_hz", SCALED_DOUBLE(noise.ase_rate_open_hz, 1.0)},
      {"attenuation_per_m", SCALED_DOUBLE(system.attenuation_per_m, 1.0)},
      {"backscatter_decay_us", SCALED_DOUBLE(noise.backscatter_decay_s, 1e-6)},
      {"backscatter_peak_rate_hz", SCALED_DOUBLE(noise.backscatter_peak_rate_hz, 1.0)},
      {"bin_width_ps", PICOS_FIELD(recon.bin_width_ps)},
      {"censor_time_radius_ps", PICOS_FIELD(recon.censor_time_radius_ps)},
      {"censor_window_px",
       {[](const RunConfig& c) { return std::to_string(c.recon.censor_window); },
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.recon.censor_window = static_cast<int>(kv_int(k, v));
        }}},
      {"dcr_hz", SCALED_DOUBLE(system.dcr_hz, 1.0)},
      {"dead_time_ns", SCALED_DOUBLE(system.dead_time_s, 1e-9)},
      {"detector_jitter_fwhm_ps", SCALED_DOUBLE(system.detector_jitter_fwhm_s, 1e-12)},
      {"dwell_ms", SCALED_DOUBLE(dwell_s, 1e-3)},
      {"gate_emission_ps", PICOS_FIELD(schedule.emission_ps)},
      {"gate_isolation_ps", PICOS_FIELD(schedule.isolation_ps)},
      {"gate_period_ps", PICOS_FIELD(schedule.period_ps)},
      {"link_constant", SCALED_DOUBLE(system.link_constant, 1.0)},
      {"max_iters",
       {[](const RunConfig& c) { return std::to_string(c.recon.max_iters); },
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.recon.max_iters = kv_uint(k, v);
        }}},
      {"max_range_m", SCALED_DOUBLE(rates.max_range_m, 1.0)},
      {"pde", SCALED_DOUBLE(system.pde, 1.0)},
      {"pulse_fwhm_ps", SCALED_DOUBLE(system.pulse_fwhm_s, 1e-12)},
      {"ranging_rates_hz",
       {[](const RunConfig& c) { return fmt_list(c.rates.rep_rates_hz); },
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.rates.rep_rates_hz = kv_double_list(k, v);
        }}},
      {"ranging_tol_ps", PICOS_FIELD(ranging_tol_ps)},
      {"rel_tol", SCALED_DOUBLE(recon.rel_tol, 1.0)},
      {"rep_rate_hz", SCALED_DOUBLE(system.rep_rate_hz, 1.0)},
      {"seed",
       {[](const RunConfig& c) { return std::to_string(c.seed); },
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.seed = kv_uint(k, v);
        }}},
      {"significance_alpha", SCALED_DOUBLE(recon.significance_alpha, 1.0)},
      {"system_jitter_fwhm_ps", SCALED_DOUBLE(system.system_jitter_fwhm_s, 1e-12)},
      {"tv_lambda", SCALED_DOUBLE(recon.tv_lambda, 1.0)},
  };
  return table;
}

#undef SCALED_DOUBLE
#undef PICOS_FIELD

const KeyEntry* find_key(const std::string& key) {
  const auto& table = registry();
  auto it = std::lower_bound(table.begin(), table.end(), key,
                             [](const auto& e, const std::string& k) { return e.first < k; });
  if (it == table.end() || it->first != key) return nullptr;
  return &it->second;
}

void refresh_derived(RunConfig& c) {
  c.schedule.detection_ps =
      c.schedule.period_ps - c.schedule.emission_ps - c.schedule.isolation_ps;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, e] : registry()) keys.push_back(k);
  return keys;
}

void RunConfig::validate() const {
  system.validate();
  schedule.validate();
  noise.validate();
  recon.validate();
  rates.validate();
  if (ranging_tol_ps <= 0) throw InputError("config: ranging_tol_ps must be > 0");
  if (!(dwell_s >= 0.0)) throw InputError("config: dwell_ms must be >= 0");
}

std::string RunConfig::canonical_text() const {
  std::string out;
  for (const auto& [key, entry] : registry()) {
    out += key;
    out += " = ";
    out += entry.get(*this);
    out += "\n";
  }
  return out;
}

std::array<std::uint8_t, 32> RunConfig::digest() const {
  const std::string text = canonical_text();
  std::array<std::uint8_t, 32> out{};
  unsigned len = 0;
  EVP_Digest(text.data(), text.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig config;
  std::set<std::string> seen;
  for (const auto& [key, value] : parse_kv_text(text, origin)) {
    const KeyEntry* entry = find_key(key);
    if (!entry) throw InputError(origin + ": unknown config key '" + key + "'");
    if (!seen.insert(key).second)
      throw InputError(origin + ": duplicate config key '" + key + "'");
    entry->set(config, key, value);
  }
  refresh_derived(config);
  config.validate();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config_text(read_text_file(path), path.string());
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value) {
  const KeyEntry* entry = find_key(key);
  if (!entry) throw InputError("unknown config key '" + key + "'");
  entry->set(config, key, value);
  refresh_derived(config);
}

std::string hex_digest(const std::array<std::uint8_t, 32>& digest) {
  static const char* hex = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (std::uint8_t b : digest) {
    s += hex[b >> 4];
    s += hex[b & 0xf];
  }
  return s;
}

}  // namespace splidar::io
