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

#include "combspec.hpp"
#include "molstruct.hpp"
#include "rates.hpp"

namespace cavicool {

// Semiclassical translational-cooling knobs.
struct TransParams {
  bool doppler_tracking = true;   // widen/offset the line by the thermal Doppler spread
  double tracking_gain = 0.7;     // fraction of the Doppler spread added to |dw|
  double recoil_per_event = 1.0;  // recoil energies deposited per scattering event
};

// Everything needed to evaluate rates for one molecule in one resonator.
struct System {
  MoleculeConstants mol;
  LevelSet levels;
  std::vector<RamanLine> lines;
  LaserSpec laser;
  CavitySpec cavity;          // finetune here is the config default; segments override
  Calibration calib;
  double nominal_laser = 0.0; // rad/s; reference frequency for comb placement
  TransParams trans;
  int rayleigh_ground = -1;   // index of the (v=0, J=0) elastic line
};

// One laser setting held for a fixed time.
struct ScheduleSegment {
  double t_start = 0.0;   // s
  double duration = 0.0;  // s
  double laser = 0.0;     // rad/s
  double finetune = 0.0;  // rad/s
  std::string lines;      // annotation: "2->0", "2->0+3->1", or "R" (elastic)
};

struct Schedule {
  std::vector<ScheduleSegment> segments;
  std::string diagnostic;  // non-empty when construction stopped early
  double total_duration() const;
};

// Population snapshot plus translational temperature.
struct SimState {
  double time = 0.0;                 // s
  std::vector<double> populations;   // over LevelSet order
  double T_tr = 0.0;                 // K
};

// W[r,c] = rate c -> r for r != c (1/s, non-negative); columns sum to zero.
struct RateMatrix {
  int n = 0;
  std::vector<double> a;  // row-major, n*n

  explicit RateMatrix(int dim = 0) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}
  double& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

// Assembles the population rate matrix for one laser setting: every inelastic
// line contributes its spontaneous rate plus its resonator-enhanced rate at
// the line's comb detuning. Doppler factors are evaluated at the thermal
// momentum +-sqrt(M kB T_tr) and averaged.
RateMatrix build_rate_matrix(const System& sys, double laser_freq,
                             double finetune, double T_tr);

// Advances dP/dt = W P over `duration` with classical fixed-step 4th-order
// Runge-Kutta; the step never exceeds dt_max nor 0.1/max|W_ii|. Steps below
// 1e-12 s are rejected as underflow.
std::vector<double> integrate_populations(const RateMatrix& W,
                                          std::vector<double> P,
                                          double duration, double dt_max);

// Population-weighted mean rotational quantum number.
double mean_J(const std::vector<double>& P, const LevelSet& levels);

// 1-D mean translational energy derivative (J/s) for an elastic line held at
// detuning `delta_omega` from its comb tooth, averaged over a thermal
// momentum distribution by Gauss-Hermite quadrature.
double translational_energy_rate(const System& sys, double delta_omega,
                                 double energy);

struct TransResult {
  std::vector<double> times;   // s
  std::vector<double> temps;   // K
  double T_final = 0.0;        // K
  double t_1e = 0.0;           // s; time to cover 1-1/e of the temperature drop
  bool reached_1e = false;
};

// Integrates the translational energy from temperature T0 under a fixed
// elastic-line detuning. delta_omega >= 0 has no equilibrium and is rejected
// as a heating configuration.
TransResult translational_trajectory(const System& sys, double T0,
                                     double delta_omega, double duration);

struct SegmentDiag {
  int index = 0;
  double t_start = 0.0;
  double duration = 0.0;
  double laser = 0.0;     // rad/s
  double finetune = 0.0;  // rad/s
  std::string lines;
  double meanJ_end = 0.0;
  double T_end = 0.0;     // K
};

struct TimeSeries {
  std::vector<double> times;              // s
  std::vector<double> meanJ;
  std::vector<double> T_tr;               // K
  std::vector<std::vector<double>> populations;
  SimState final_state;
  std::vector<SegmentDiag> segments;
};

// Runs the schedule: per segment the rate matrix is rebuilt (laser frequency
// and fine-tune may change) and populations plus translational energy are
// advanced together; rows are emitted at exact multiples of `cadence`.
// Probability conservation, non-negativity and parity-ladder conservation
// are monitored throughout.
TimeSeries simulate(const System& sys, const Schedule& schedule,
                    const SimState& initial, double cadence);

}  // namespace cavicool
