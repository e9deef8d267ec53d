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

#include "dynamics.hpp"

namespace cavicool {

struct GreedyParams {
  double epoch = 0.2;           // s, lookahead horizon per decision
  double horizon = 1.8;         // s
  double target_ground = 0.999; // stop once P(J=0)+P(J=1) reaches this
  double tolerance = 0.0;       // rad/s, resonance match tolerance
  double window = 0.0;          // rad/s, fine-tune search window
  int max_simultaneous = 4;     // resonances per setting before warning
};

// Builds a schedule by repeatedly simulating one epoch for every candidate
// laser setting (each anti-Stokes line alone, and every dual-line combination
// the fine-tune can co-align) and keeping the setting with the largest drop
// of the mean rotational quantum number. Ties resolve to the earlier
// candidate: single lines in ascending shift order, then pairs in
// lexicographic order. Candidates that would co-resonate a Stokes line are
// excluded. Consecutive epochs with the same setting merge into one segment.
// The translational temperature is held at its initial value during the
// search; the authoritative run re-integrates it.
Schedule greedy_schedule(const System& sys, const std::vector<double>& P0,
                         double T_tr, const GreedyParams& params);

// Single-segment schedule that parks the elastic line a fixed detuning below
// its comb tooth (detuning < 0 cools the translational motion).
Schedule elastic_schedule(const System& sys, double duration, double detuning);

struct ValidationIssue {
  int segment = -1;
  bool error = false;  // true: Stokes co-resonance; false: advisory
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  // resonant line ids per segment, in line order
  std::vector<std::vector<int>> resonant;
};

// Lists every resonant line per segment; a resonant Stokes line is an error,
// and more than max_simultaneous concurrent resonances raises a warning.
ValidationReport validate_schedule(const System& sys, const Schedule& schedule,
                                   double tolerance, int max_simultaneous);

// CSV with header t_start_s,duration_s,laser_hz,finetune_hz,lines; doubles
// rendered at full precision so a written schedule reads back identically.
std::string write_schedule_csv(const Schedule& schedule);
Schedule parse_schedule_csv(const std::string& text);

}  // namespace cavicool
