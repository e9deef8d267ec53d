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

#include "combspec.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace cavicool {

namespace {

double positive_mod(double x, double s) {
  double r = std::fmod(x, s);
  if (r < 0.0) r += s;
  if (r >= s) r = 0.0;  // guard the x = -eps rounding corner
  return r;
}

}  // namespace

double wrap_to_half(double x, double s) {
  return x - std::round(x / s) * s;
}

std::vector<FoldedLine> fold_lines(const std::vector<RamanLine>& lines,
                                   const CavitySpec& cavity,
                                   double laser_freq) {
  const double s = cavity.spacing();
  if (s <= 0.0) throw ConfigError("comb spacing must be > 0");
  std::vector<FoldedLine> out;
  out.reserve(lines.size());
  for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
    const double x = laser_freq + lines[i].shift - cavity.anchor;
    FoldedLine f;
    f.line = i;
    f.folded = positive_mod(x, s);
    f.order = static_cast<std::int64_t>(std::llround(x / s));
    f.residual = x - static_cast<double>(f.order) * s;
    out.push_back(f);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FoldedLine& a, const FoldedLine& b) {
                     return a.folded < b.folded;
                   });
  return out;
}

std::vector<ResonanceMatch> find_resonances(const std::vector<RamanLine>& lines,
                                            const CavitySpec& cavity,
                                            double laser_freq,
                                            double tolerance) {
  if (tolerance <= 0.0) throw ConfigError("match tolerance must be > 0");
  const double s = cavity.spacing();
  if (s <= 0.0) throw ConfigError("comb spacing must be > 0");
  std::vector<ResonanceMatch> out;
  out.reserve(lines.size());
  for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
    ResonanceMatch m;
    m.line = i;
    m.delta_omega = wrap_to_half(laser_freq + lines[i].shift - cavity.anchor, s);
    m.resonant = std::abs(m.delta_omega) <= tolerance;
    m.kind = lines[i].kind;
    out.push_back(m);
  }
  return out;
}

FinetuneSolution solve_finetune(const RamanLine& a, const RamanLine& b,
                                const CavitySpec& cavity, double nominal_laser,
                                double window, double tolerance) {
  if (window < 0.0) throw ConfigError("fine-tune window must be >= 0");
  if (window >= cavity.fsr / 2.0)
    throw ConfigError("fine-tune window must be below half the mode spacing");

  // The two scattered frequencies differ by ds regardless of the laser
  // frequency, so dual alignment is a property of ds against the comb alone:
  // with tooth separation m the joint residual is ds - m * (fsr + finetune),
  // and the laser can place the residual symmetrically on the two lines.
  const double ds = a.shift - b.shift;

  struct Candidate {
    double minmax;
    double finetune;
    std::int64_t gap;
  };
  std::vector<Candidate> candidates;

  auto add_candidate = [&](std::int64_t m) {
    double delta = 0.0;
    if (m != 0) {
      delta = ds / static_cast<double>(m) - cavity.fsr;
      delta = std::clamp(delta, -window, window);
    }
    const double residual = ds - static_cast<double>(m) * (cavity.fsr + delta);
    candidates.push_back({std::abs(residual) / 2.0, delta, m});
  };

  const double m_lo = ds / (cavity.fsr + window);
  const double m_hi = ds / (cavity.fsr - window);
  const std::int64_t first =
      static_cast<std::int64_t>(std::floor(std::min(m_lo, m_hi))) - 1;
  const std::int64_t last =
      static_cast<std::int64_t>(std::ceil(std::max(m_lo, m_hi))) + 1;
  for (std::int64_t m = first; m <= last; ++m) add_candidate(m);
  if (first > 0 || last < 0) add_candidate(0);

  const Candidate best = *std::min_element(
      candidates.begin(), candidates.end(),
      [](const Candidate& x, const Candidate& y) {
        if (x.minmax != y.minmax) return x.minmax < y.minmax;
        if (std::abs(x.finetune) != std::abs(y.finetune))
          return std::abs(x.finetune) < std::abs(y.finetune);
        return x.gap < y.gap;
      });

  FinetuneSolution sol;
  sol.finetune = best.finetune;
  sol.order_gap = best.gap;
  sol.residual_max = best.minmax;
  sol.feasible = best.minmax <= tolerance;

  // Place line a's tooth nearest the nominal laser, then recentre so the two
  // lines share the leftover mismatch with opposite signs.
  const double s = cavity.fsr + best.finetune;
  const double residual = ds - static_cast<double>(best.gap) * s;
  const std::int64_t n_a = static_cast<std::int64_t>(
      std::llround((nominal_laser + a.shift - cavity.anchor) / s));
  sol.laser = cavity.anchor + static_cast<double>(n_a) * s - a.shift +
              residual / 2.0;
  return sol;
}

}  // namespace cavicool
