// Copyright 2026 The cavicool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "errors.hpp"

namespace cavicool {

namespace {

constexpr std::array<const char*, 17> kRunKeys = {
    "molecule",       "cavity",          "schedule",
    "temp_rot_K",     "temp_trans_K",    "jmax",
    "vmax",           "epoch_s",         "horizon_s",
    "target_ground",  "cadence_s",       "match_tolerance_kappa",
    "max_simultaneous", "finetune_window_hz", "trans_doppler_tracking",
    "trans_tracking_gain", "trans_recoil_per_event"};

constexpr std::array<const char*, 10> kMoleculeKeys = {
    "mass_amu", "B_cm",    "D_cm",       "we_cm",      "wexe_cm",
    "Te_cm",    "gamma_eff_hz", "alpha_iso", "alpha_aniso", "alpha_deriv"};

constexpr std::array<const char*, 14> kCavityKeys = {
    "fsr_hz",        "kappa_hz",          "g_hz",
    "finesse",       "length_m",          "comb_anchor_hz",
    "finetune_hz",   "laser_wavelength_m", "rabi_hz",
    "delta_hz",      "standing_wave",     "calib_cavity_rate_hz",
    "calib_spont_rate_hz", "calib_ref_strength"};

std::string dirname_of(const std::string& path) {
  const size_t slash = path.find_last_of('/');
  if (slash == std::string::npos) return ".";
  if (slash == 0) return "/";
  return path.substr(0, slash);
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  return base_dir + "/" + path;
}

int get_int(const KvFile& kv, const std::string& key, int fallback) {
  if (!kv.has(key)) return fallback;
  const double v = kv.get_double(key);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9)
    throw ConfigError("config key '" + key + "' must be an integer");
  return i;
}

}  // namespace

bool is_run_key(const std::string& key) {
  return std::find_if(kRunKeys.begin(), kRunKeys.end(), [&](const char* k) {
           return key == k;
         }) != kRunKeys.end();
}

bool is_molecule_key(const std::string& key) {
  if (key.rfind("B_cm_v", 0) == 0) return true;  // per-level B_cm_v0, B_cm_v1, ...
  return std::find_if(kMoleculeKeys.begin(), kMoleculeKeys.end(),
                      [&](const char* k) { return key == k; }) !=
         kMoleculeKeys.end();
}

bool is_cavity_key(const std::string& key) {
  return std::find_if(kCavityKeys.begin(), kCavityKeys.end(),
                      [&](const char* k) { return key == k; }) !=
         kCavityKeys.end();
}

Overrides parse_overrides(const std::vector<std::string>& assignments) {
  Overrides out;
  for (const auto& a : assignments) {
    const size_t eq = a.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override must have the form key=value: '" + a + "'");
    out.emplace_back(a.substr(0, eq), a.substr(eq + 1));
  }
  return out;
}

void reject_unknown_overrides(const Overrides& overrides) {
  for (const auto& [key, value] : overrides) {
    (void)value;
    if (!is_run_key(key) && !is_molecule_key(key) && !is_cavity_key(key))
      throw ConfigError("unknown override key '" + key + "'");
  }
}

KvFile load_with_overrides(const std::string& path, const Overrides& overrides,
                           bool (*belongs)(const std::string&)) {
  KvFile kv = KvFile::from_file(path);
  for (const auto& [key, value] : overrides)
    if (belongs(key)) kv.set(key, value);
  return kv;
}

RunConfig load_run_config(const std::string& path, const Overrides& overrides) {
  reject_unknown_overrides(overrides);
  KvFile kv = KvFile::from_file(path);
  std::vector<std::string> overridden;
  for (const auto& [key, value] : overrides) {
    if (is_run_key(key)) {
      kv.set(key, value);
      overridden.push_back(key);
    }
  }
  const auto from_override = [&](const char* key) {
    return std::find(overridden.begin(), overridden.end(), key) !=
           overridden.end();
  };

  RunConfig cfg;
  const std::string base = dirname_of(path);
  cfg.molecule_path = kv.get_string("molecule");
  if (!from_override("molecule")) cfg.molecule_path = resolve(base, cfg.molecule_path);
  cfg.cavity_path = kv.get_string("cavity");
  if (!from_override("cavity")) cfg.cavity_path = resolve(base, cfg.cavity_path);
  cfg.schedule = kv.get_string("schedule", "auto");
  if (cfg.schedule != "auto" && !from_override("schedule"))
    cfg.schedule = resolve(base, cfg.schedule);

  cfg.temp_rot_K = kv.get_double("temp_rot_K", cfg.temp_rot_K);
  cfg.temp_trans_K = kv.get_double("temp_trans_K", cfg.temp_trans_K);
  cfg.jmax = get_int(kv, "jmax", cfg.jmax);
  cfg.vmax = get_int(kv, "vmax", cfg.vmax);
  cfg.epoch_s = kv.get_double("epoch_s", cfg.epoch_s);
  cfg.horizon_s = kv.get_double("horizon_s", cfg.horizon_s);
  cfg.target_ground = kv.get_double("target_ground", cfg.target_ground);
  cfg.cadence_s = kv.get_double("cadence_s", cfg.cadence_s);
  cfg.match_tolerance_kappa =
      kv.get_double("match_tolerance_kappa", cfg.match_tolerance_kappa);
  cfg.max_simultaneous = get_int(kv, "max_simultaneous", cfg.max_simultaneous);
  cfg.finetune_window_hz =
      kv.get_double("finetune_window_hz", cfg.finetune_window_hz);
  cfg.trans_doppler_tracking =
      kv.get_bool("trans_doppler_tracking", cfg.trans_doppler_tracking);
  cfg.trans_tracking_gain =
      kv.get_double("trans_tracking_gain", cfg.trans_tracking_gain);
  cfg.trans_recoil_per_event =
      kv.get_double("trans_recoil_per_event", cfg.trans_recoil_per_event);

  if (cfg.temp_rot_K < 0.0) throw ConfigError("temp_rot_K must be >= 0");
  if (cfg.temp_trans_K < 0.0) throw ConfigError("temp_trans_K must be >= 0");
  if (cfg.jmax < 0) throw ConfigError("jmax must be >= 0");
  if (cfg.vmax < 0) throw ConfigError("vmax must be >= 0");
  if (cfg.epoch_s <= 0.0) throw ConfigError("epoch_s must be > 0");
  if (cfg.horizon_s < 0.0) throw ConfigError("horizon_s must be >= 0");
  if (cfg.target_ground <= 0.0 || cfg.target_ground > 1.0)
    throw ConfigError("target_ground must be in (0, 1]");
  if (cfg.cadence_s <= 0.0) throw ConfigError("cadence_s must be > 0");
  if (cfg.match_tolerance_kappa <= 0.0)
    throw ConfigError("match_tolerance_kappa must be > 0");
  if (cfg.max_simultaneous < 1)
    throw ConfigError("max_simultaneous must be >= 1");
  if (cfg.finetune_window_hz < 0.0)
    throw ConfigError("finetune_window_hz must be >= 0");
  if (cfg.trans_tracking_gain < 0.0)
    throw ConfigError("trans_tracking_gain must be >= 0");
  if (cfg.trans_recoil_per_event < 0.0)
    throw ConfigError("trans_recoil_per_event must be >= 0");
  return cfg;
}

}  // namespace cavicool
