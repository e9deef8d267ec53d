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

#include "kvfile.hpp"
#include "molstruct.hpp"

namespace cavicool {

// Pump laser parameters. The Rabi coupling is the reference value for the
// elastic ground-state line; individual lines scale it by their relative
// strength.
struct LaserSpec {
  double wavelength = 0.0;    // m
  double rabi = 0.0;          // rad/s
  double delta = 0.0;         // detuning from the effective excited state, rad/s
  double k_L = 0.0;           // rad/m
  bool standing_wave = false; // average the +-k_L Doppler branches when set
};

// Resonator mode comb. Comb tooth n sits at anchor + n * (FSR + finetune):
// the fine-tune models the change of mode spacing produced by a micrometric
// length adjustment, with the anchor tooth held as reference.
struct CavitySpec {
  double fsr = 0.0;        // rad/s
  double kappa = 0.0;      // half-linewidth, rad/s
  double g = 0.0;          // reference coupling, rad/s
  double anchor = 0.0;     // comb anchor frequency, rad/s (0 = laser nominal)
  double finetune = 0.0;   // mode-spacing offset, rad/s
  double finesse = 0.0;
  double length = 0.0;     // m (derived from FSR when not given)
  double k_c = 0.0;        // rad/m, of the scattered light
  // 2*kappa vs FSR/finesse mismatch, relative; flagged by the regime check.
  double consistency_rel = 0.0;

  double spacing() const { return fsr + finetune; }
};

// Two global calibration constants pin the absolute rate scale: microscopic
// parameters alone leave it uncertain by orders of magnitude, so the composed
// kernels are normalized such that an elastic line of reference strength
// scatters into the cavity at `cavity_rate_target` (on resonance, at rest)
// and spontaneously at `spont_rate_target`. Relative strengths, lineshapes
// and Doppler structure are untouched.
struct Calibration {
  double C_cav = 0.0;              // dimensionless prefactor of the cavity kernel
  double C_spont = 0.0;            // dimensionless prefactor of the spontaneous kernel
  double S_ref = 1.0;              // strength defining "reference" (alpha^2 units)
  double cavity_rate_target = 0.0; // 1/s
  double spont_rate_target = 0.0;  // 1/s
};

// 1 / (detuning^2 + halfwidth^2); the shared resonance kernel.
double lorentzian(double detuning, double halfwidth);

// Dimensionless excitation of one line: S_rel * Omega^2 * L(Delta + k_L p / M,
// Gamma_eff / 2). S_rel is the line strength relative to the calibration
// reference. With the standing-wave flag the +-k_L branches are averaged.
double pump_excitation(double S_rel, const LaserSpec& laser, double gamma_eff,
                       double p, double mass);

// Spontaneous Raman rate into one final state: C_spont * branching *
// Gamma_eff * gamma. `branching` is the per-initial-state normalized share
// of this line.
double spontaneous_raman_rate(double gamma, double branching, double gamma_eff,
                              const Calibration& calib);

// Cavity-enhanced emission, both Doppler branches summed:
//   sum over +- of C_cav * 2 kappa * gamma * (g^2 S_c / 2) * L(dw +- k_c p/M, kappa)
// On resonance at rest this is 2 * C_cav * gamma * g^2 * S_c / kappa.
double cavity_emission_rate(double gamma, const CavitySpec& cavity,
                            double delta_omega, double p, double mass,
                            double S_c, const Calibration& calib);

// Fixes C_cav and C_spont so that a reference-strength elastic line at rest,
// on resonance, reproduces the configured target rates.
Calibration calibrate(const LaserSpec& laser, const CavitySpec& cavity,
                      double gamma_eff, double cavity_rate_target,
                      double spont_rate_target, double S_ref);

struct RegimeReport {
  double ratio_adiabatic = 0.0;    // kappa / |g Omega / Delta|
  double cooperativity = 0.0;      // g^2 / (Gamma_eff kappa)
  double recoil_frequency = 0.0;   // hbar k_c^2 / 2M, rad/s
  double recoil_vs_kappa = 0.0;    // informational
  double threshold_adiabatic = 10.0;
  double threshold_cooperativity = 1.0;
  bool pass_adiabatic = false;
  bool pass_cooperativity = false;
  bool comb_consistent = true;     // 2 kappa = FSR / finesse within 1e-6
  bool pass() const { return pass_adiabatic && pass_cooperativity; }
};

// Validity conditions under which the rate model holds: coherent cavity
// driving negligible (kappa >> |g Omega/Delta|), strong cooperativity
// (g^2 / Gamma kappa >= 1), plus informational recoil-frequency and comb
// consistency figures.
RegimeReport regime_check(const LaserSpec& laser, const CavitySpec& cavity,
                          const MoleculeConstants& mol,
                          double threshold_adiabatic = 10.0,
                          double threshold_cooperativity = 1.0);

// Load laser + cavity from one key-value config; fills derived quantities
// (k_L, k_c, length or FSR or kappa from the others) and the consistency
// figure.
void load_cavity_laser(const KvFile& kv, LaserSpec* laser, CavitySpec* cavity);

}  // namespace cavicool
