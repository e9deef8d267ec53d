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
#include <vector>

#include "config.hpp"
#include "dynamics.hpp"
#include "scheduler.hpp"

namespace cavicool {

// High-level facade: loads the configuration stack, builds the System, and
// produces the file-format outputs consumed by the command-line front end.
class Model {
 public:
  // Loads run config, molecule and cavity files, applies overrides, and
  // calibrates the rate scale.
  static Model create(const std::string& run_config_path,
                      const Overrides& overrides);

  const RunConfig& config() const { return cfg_; }
  const System& system() const { return sys_; }

  // Folded-spectrum table (line_id,Ji,Jf,kind,shift_hz,folded_hz,comb_order,
  // strength) sorted by folded position, plus a JSON summary of its shape.
  std::string spectrum_csv() const;
  std::string spectrum_summary_json() const;

  // Greedy anti-Stokes schedule from the configured initial state.
  Schedule auto_schedule() const;
  // Schedule per the run config: "auto" or a CSV file.
  Schedule resolve_schedule() const;
  // Elastic-line pre-cooling schedule, parked at -kappa.
  Schedule elastic_precool(double duration) const;

  struct RunOutput {
    TimeSeries series;
    std::string timeseries_csv;
    std::string summary_json;
    bool invariants_ok = true;
  };
  RunOutput run(const Schedule& schedule) const;

  // Regime diagnostics; pass=false maps to the dedicated exit code.
  std::string check_json(bool* pass) const;

  // Per-line resonator-enhanced rates with each anti-Stokes line parked on
  // its tooth, at the configured translational temperature (1/s).
  std::vector<double> anti_stokes_peak_rates() const;

  std::vector<double> initial_populations() const;

 private:
  RunConfig cfg_;
  System sys_;
};

}  // namespace cavicool
