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

#include <cstdint>
#include <vector>

#include "molstruct.hpp"
#include "rates.hpp"

namespace cavicool {

// One scattered line reduced into a single mode spacing of the resonator.
struct FoldedLine {
  int line = -1;          // index into the source line list
  double folded = 0.0;    // position above the lower comb tooth, rad/s in [0, spacing)
  std::int64_t order = 0; // nearest comb tooth index relative to the anchor
  double residual = 0.0;  // signed detuning to that tooth, rad/s in [-spacing/2, spacing/2]
};

// Resonance status of one line for a concrete laser frequency.
struct ResonanceMatch {
  int line = -1;
  double delta_omega = 0.0; // signed detuning to the nearest comb tooth, rad/s
  bool resonant = false;    // |delta_omega| <= tolerance
  LineKind kind = LineKind::rayleigh;
};

// Result of the dual-line alignment search.
struct FinetuneSolution {
  bool feasible = false;     // residual_max <= tolerance
  double finetune = 0.0;     // mode-spacing offset, rad/s
  double laser = 0.0;        // laser frequency achieving the minimum, rad/s
  double residual_max = 0.0; // minimized max(|dw_a|, |dw_b|), rad/s
  std::int64_t order_gap = 0;// comb-tooth separation between the two lines
};

// Signed remainder of x modulo s, reduced into [-s/2, s/2].
double wrap_to_half(double x, double s);

// Reduces every line's scattered frequency (laser_freq + shift) into one mode
// spacing relative to the comb anchor. Sorted by folded position; ties keep
// line order.
std::vector<FoldedLine> fold_lines(const std::vector<RamanLine>& lines,
                                   const CavitySpec& cavity,
                                   double laser_freq);

// Detuning of every line against its nearest comb tooth at the given laser
// frequency; lines with |dw| <= tolerance are flagged resonant. Output in
// line order.
std::vector<ResonanceMatch> find_resonances(const std::vector<RamanLine>& lines,
                                            const CavitySpec& cavity,
                                            double laser_freq,
                                            double tolerance);

// Finds the mode-spacing offset (|finetune| <= window) and laser frequency
// that minimize the worse of the two lines' detunings. Any residual mismatch
// is split evenly between the lines; with a == b the answer is finetune = 0.
// Ties resolve to the smallest |finetune|. `nominal_laser` picks which comb
// tooth the solution laser lands near.
FinetuneSolution solve_finetune(const RamanLine& a, const RamanLine& b,
                                const CavitySpec& cavity, double nominal_laser,
                                double window, double tolerance);

}  // namespace cavicool
