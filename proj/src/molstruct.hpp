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

#include <map>
#include <string>
#include <vector>

#include "kvfile.hpp"

namespace cavicool {

// Spectroscopic and coupling constants of one molecule. Frequencies are
// stored in rad/s (converted from 1/cm or Hz at load time); polarizabilities
// stay in the user's units (only ratios and squares enter the rates).
struct MoleculeConstants {
  double mass = 0.0;                 // kg
  std::vector<double> B_v;           // rotational constant per v, rad/s
  double D = 0.0;                    // centrifugal distortion, rad/s
  double we = 0.0;                   // harmonic frequency, rad/s
  double wexe = 0.0;                 // anharmonicity, rad/s
  double Te = 0.0;                   // electronic excitation energy, rad/s
  double gamma_eff = 0.0;            // effective excited-state linewidth, rad/s
  double alpha_iso = 0.0;            // isotropic polarizability
  double alpha_aniso = 0.0;          // polarizability anisotropy
  double alpha_deriv = 0.0;          // vibrational Raman factor; 0 disables dv != 0

  double B(int v) const;             // rad/s, validated index

  static MoleculeConstants from_kv(const KvFile& kv);
};

// One internal state |v, J>. Energy is rad/s above (v=0, J=0).
struct RoVibLevel {
  int v = 0;
  int J = 0;
  double energy = 0.0;   // rad/s
  int degeneracy = 1;    // 2J+1
  int ladder = 0;        // parity tag, J mod 2
};

// Immutable ordered level list with a (v, J) -> index map, sorted by energy.
class LevelSet {
 public:
  LevelSet() = default;
  explicit LevelSet(std::vector<RoVibLevel> levels);

  std::size_t size() const { return levels_.size(); }
  const RoVibLevel& operator[](std::size_t i) const { return levels_[i]; }
  const std::vector<RoVibLevel>& all() const { return levels_; }
  // -1 when the state is not in the set.
  int index_of(int v, int J) const;

 private:
  std::vector<RoVibLevel> levels_;
  std::map<std::pair<int, int>, int> index_;
};

enum class LineKind { rayleigh, stokes, anti_stokes };

const char* to_string(LineKind kind);

// One two-photon transition between levels of the same parity ladder.
// shift = E_initial - E_final (rad/s): positive for anti-Stokes (the
// scattered photon carries energy out of the molecule).
struct RamanLine {
  int initial = 0;       // level index
  int final = 0;         // level index
  double shift = 0.0;    // rad/s
  LineKind kind = LineKind::rayleigh;
  double strength = 0.0; // polarizability-squared units, >= 0
};

// Levels (v, J) for 0 <= v <= v_max, 0 <= J <= J_max with
// E(v, J) = we (v + 1/2) - wexe (v + 1/2)^2 + B_v J (J+1) - D J^2 (J+1)^2,
// referenced to E(0, 0) = 0. Rejects non-monotonic rotational ladders.
LevelSet build_levels(const MoleculeConstants& c, int v_max, int J_max);

// P(v, J) proportional to (2J+1) exp(-E / kB T), normalized; T = 0 puts all
// weight on the global ground level.
std::vector<double> boltzmann_populations(const LevelSet& levels, double T);

// Rotational Raman branch coefficients:
//   b(J -> J-2) = 3 J (J-1)   / (2 (2J+1)(2J-1))
//   b(J -> J)   = J (J+1)     / ((2J-1)(2J+3))
//   b(J -> J+2) = 3 (J+1)(J+2) / (2 (2J+1)(2J+3))
// Throws std::invalid_argument unless |J - J_final| is 0 or 2.
double placzek_teller(int J, int J_final);

// All lines allowed by dJ in {0, +-2} and dv in {0, +-1} (dv != 0 only when
// alpha_deriv > 0). Strength: b * alpha_aniso^2 for dJ != 0, plus
// alpha_iso^2 on the elastic dJ = 0, dv = 0 line.
std::vector<RamanLine> enumerate_lines(const LevelSet& levels,
                                       const MoleculeConstants& c);

}  // namespace cavicool
