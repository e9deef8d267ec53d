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

#include "molstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "units.hpp"

namespace cavicool {

double MoleculeConstants::B(int v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= B_v.size()) {
    throw ConfigError("no rotational constant for vibrational level v=" +
                      std::to_string(v) +
                      " (provide B_cm_v" + std::to_string(v) + ")");
  }
  return B_v[static_cast<std::size_t>(v)];
}

MoleculeConstants MoleculeConstants::from_kv(const KvFile& kv) {
  MoleculeConstants c;
  c.mass = kv.get_double("mass_amu") * units::atomic_mass;
  if (c.mass <= 0.0) throw ConfigError("mass_amu must be > 0");

  // Rotational constants: either one B_cm for all v, or B_cm_v0, B_cm_v1, ...
  if (kv.has("B_cm")) {
    c.B_v.push_back(units::wavenumber_to_rad(kv.get_double("B_cm")));
  }
  for (int v = 0;; ++v) {
    std::string key = "B_cm_v" + std::to_string(v);
    if (!kv.has(key)) break;
    double b = units::wavenumber_to_rad(kv.get_double(key));
    if (static_cast<std::size_t>(v) < c.B_v.size()) {
      c.B_v[static_cast<std::size_t>(v)] = b;
    } else {
      c.B_v.push_back(b);
    }
  }
  if (c.B_v.empty()) throw ConfigError("missing rotational constant (B_cm or B_cm_v0)");
  for (double b : c.B_v)
    if (b <= 0.0) throw ConfigError("rotational constants must be > 0");

  c.D = units::wavenumber_to_rad(kv.get_double("D_cm", 0.0));
  if (c.D < 0.0) throw ConfigError("D_cm must be >= 0");
  c.we = units::wavenumber_to_rad(kv.get_double("we_cm", 0.0));
  c.wexe = units::wavenumber_to_rad(kv.get_double("wexe_cm", 0.0));
  c.Te = units::wavenumber_to_rad(kv.get_double("Te_cm"));
  if (c.Te <= 0.0) throw ConfigError("Te_cm must be > 0");
  c.gamma_eff = units::hz_to_rad(kv.get_double("gamma_eff_hz"));
  if (c.gamma_eff <= 0.0) throw ConfigError("gamma_eff_hz must be > 0");
  c.alpha_iso = kv.get_double("alpha_iso");
  c.alpha_aniso = kv.get_double("alpha_aniso");
  c.alpha_deriv = kv.get_double("alpha_deriv", 0.0);
  return c;
}

LevelSet::LevelSet(std::vector<RoVibLevel> levels) : levels_(std::move(levels)) {
  std::stable_sort(levels_.begin(), levels_.end(),
                   [](const RoVibLevel& a, const RoVibLevel& b) {
                     return a.energy < b.energy;
                   });
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    auto key = std::make_pair(levels_[i].v, levels_[i].J);
    if (index_.count(key)) {
      throw ConfigError("duplicate level (v=" + std::to_string(key.first) +
                        ", J=" + std::to_string(key.second) + ")");
    }
    index_[key] = static_cast<int>(i);
  }
}

int LevelSet::index_of(int v, int J) const {
  auto it = index_.find(std::make_pair(v, J));
  return it == index_.end() ? -1 : it->second;
}

const char* to_string(LineKind kind) {
  switch (kind) {
    case LineKind::rayleigh: return "rayleigh";
    case LineKind::stokes: return "stokes";
    case LineKind::anti_stokes: return "anti_stokes";
  }
  return "?";
}

LevelSet build_levels(const MoleculeConstants& c, int v_max, int J_max) {
  if (v_max < 0 || J_max < 0) {
    throw ConfigError("v_max and J_max must be non-negative");
  }
  auto vib = [&c](int v) {
    double x = v + 0.5;
    return c.we * x - c.wexe * x * x;
  };
  auto rot = [&c](int v, int J) {
    double jj = static_cast<double>(J) * (J + 1);
    return c.B(v) * jj - c.D * jj * jj;
  };
  const double e00 = vib(0) + rot(0, 0);

  std::vector<RoVibLevel> levels;
  levels.reserve(static_cast<std::size_t>(v_max + 1) * (J_max + 1));
  for (int v = 0; v <= v_max; ++v) {
    for (int J = 0; J <= J_max; ++J) {
      if (J > 0 && rot(v, J) <= rot(v, J - 1)) {
        throw ConfigError(
            "rotational energies are not increasing at v=" + std::to_string(v) +
            ", J=" + std::to_string(J) +
            " (centrifugal distortion dominates; reduce J_max)");
      }
      RoVibLevel lvl;
      lvl.v = v;
      lvl.J = J;
      lvl.energy = vib(v) + rot(v, J) - e00;
      lvl.degeneracy = 2 * J + 1;
      lvl.ladder = J % 2;
      levels.push_back(lvl);
    }
  }
  return LevelSet(std::move(levels));
}

std::vector<double> boltzmann_populations(const LevelSet& levels, double T) {
  if (levels.size() == 0) throw ConfigError("empty level set");
  if (T < 0.0) throw ConfigError("temperature must be >= 0");

  std::vector<double> p(levels.size(), 0.0);
  if (T == 0.0) {
    // Levels are sorted by energy, so index 0 is the global ground level.
    p[0] = 1.0;
    return p;
  }
  double e_min = levels[0].energy;
  double z = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& lvl = levels[i];
    double w = lvl.degeneracy *
               std::exp(-units::hbar * (lvl.energy - e_min) /
                        (units::k_boltzmann * T));
    p[i] = w;
    z += w;
  }
  for (auto& v : p) v /= z;
  return p;
}

double placzek_teller(int J, int J_final) {
  if (J < 0 || J_final < 0) {
    throw std::invalid_argument("placzek_teller: negative J");
  }
  int dJ = J_final - J;
  double j = J;
  if (dJ == -2) {
    return 3.0 * j * (j - 1.0) / (2.0 * (2.0 * j + 1.0) * (2.0 * j - 1.0));
  }
  if (dJ == 0) {
    if (J == 0) return 0.0;
    return j * (j + 1.0) / ((2.0 * j - 1.0) * (2.0 * j + 3.0));
  }
  if (dJ == 2) {
    return 3.0 * (j + 1.0) * (j + 2.0) / (2.0 * (2.0 * j + 1.0) * (2.0 * j + 3.0));
  }
  throw std::invalid_argument("placzek_teller: |dJ| must be 0 or 2");
}

std::vector<RamanLine> enumerate_lines(const LevelSet& levels,
                                       const MoleculeConstants& c) {
  if (levels.size() == 0) throw ConfigError("empty level set");
  const double aniso2 = c.alpha_aniso * c.alpha_aniso;
  const double iso2 = c.alpha_iso * c.alpha_iso;
  const double deriv2 = c.alpha_deriv * c.alpha_deriv;

  std::vector<RamanLine> lines;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& a = levels[i];
    for (std::size_t f = 0; f < levels.size(); ++f) {
      const auto& b = levels[f];
      int dv = b.v - a.v;
      int dJ = b.J - a.J;
      if (dJ != 0 && dJ != 2 && dJ != -2) continue;
      if (dv != 0 && (std::abs(dv) != 1 || c.alpha_deriv <= 0.0)) continue;
      if (dv == 0 && dJ == 0 && i != f) continue;

      RamanLine line;
      line.initial = static_cast<int>(i);
      line.final = static_cast<int>(f);
      double bpt = placzek_teller(a.J, b.J);
      if (dv == 0) {
        line.shift = (i == f) ? 0.0 : a.energy - b.energy;
        line.strength = bpt * aniso2 + (dJ == 0 ? iso2 : 0.0);
      } else {
        line.shift = a.energy - b.energy;
        // Harmonic-oscillator matrix-element scaling for dv = +-1.
        line.strength = bpt * deriv2 * (std::min(a.v, b.v) + 1);
        if (dJ == 0) line.strength += deriv2 * (std::min(a.v, b.v) + 1);
      }
      line.kind = (line.shift == 0.0) ? LineKind::rayleigh
                  : (line.shift > 0.0 ? LineKind::anti_stokes : LineKind::stokes);
      lines.push_back(line);
    }
  }
  return lines;
}

}  // namespace cavicool
