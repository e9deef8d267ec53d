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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kvfile.hpp"

namespace cavicool {

// Run-level settings: which molecule and resonator to load, the initial
// thermal state, and the schedule/search/output knobs.
struct RunConfig {
  std::string molecule_path;
  std::string cavity_path;
  std::string schedule = "auto";  // "auto" or a schedule CSV path
  double temp_rot_K = 300.0;
  double temp_trans_K = 3.85e-6;
  int jmax = 8;
  int vmax = 0;
  double epoch_s = 0.2;
  double horizon_s = 1.8;
  double target_ground = 0.999;
  double cadence_s = 0.01;
  double match_tolerance_kappa = 1.0;  // resonance tolerance in units of kappa
  int max_simultaneous = 4;
  double finetune_window_hz = 6.0e7;
  bool trans_doppler_tracking = true;
  double trans_tracking_gain = 0.7;
  double trans_recoil_per_event = 1.0;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

// True when `key` belongs to the given config surface; overrides are routed
// by membership and rejected when they match none.
bool is_run_key(const std::string& key);
bool is_molecule_key(const std::string& key);
bool is_cavity_key(const std::string& key);

// Splits "key=value" strings; malformed entries raise a config error.
Overrides parse_overrides(const std::vector<std::string>& assignments);

// Loads the run config, applies run-level overrides, and resolves the
// molecule/cavity/schedule paths (relative paths resolve against the config
// file's directory; overridden paths stay as given).
RunConfig load_run_config(const std::string& path, const Overrides& overrides);

// Loads a key-value file and applies the overrides that belong to it.
KvFile load_with_overrides(const std::string& path, const Overrides& overrides,
                           bool (*belongs)(const std::string&));

// Rejects overrides whose key is not recognized by any config surface.
void reject_unknown_overrides(const Overrides& overrides);

}  // namespace cavicool
