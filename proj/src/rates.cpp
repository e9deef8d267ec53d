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

#include "rates.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "units.hpp"

namespace cavicool {

double lorentzian(double detuning, double halfwidth) {
  return 1.0 / (detuning * detuning + halfwidth * halfwidth);
}

double pump_excitation(double S_rel, const LaserSpec& laser, double gamma_eff,
                       double p, double mass) {
  const double doppler = laser.k_L * p / mass;
  const double half = gamma_eff / 2.0;
  double shape = lorentzian(laser.delta + doppler, half);
  if (laser.standing_wave) {
    shape = 0.5 * (shape + lorentzian(laser.delta - doppler, half));
  }
  return S_rel * laser.rabi * laser.rabi * shape;
}

double spontaneous_raman_rate(double gamma, double branching, double gamma_eff,
                              const Calibration& calib) {
  return calib.C_spont * branching * gamma_eff * gamma;
}

double cavity_emission_rate(double gamma, const CavitySpec& cavity,
                            double delta_omega, double p, double mass,
                            double S_c, const Calibration& calib) {
  const double doppler = cavity.k_c * p / mass;
  const double half_coupling = cavity.g * cavity.g * S_c / 2.0;
  const double plus = lorentzian(delta_omega + doppler, cavity.kappa);
  const double minus = lorentzian(delta_omega - doppler, cavity.kappa);
  return calib.C_cav * 2.0 * cavity.kappa * gamma * half_coupling * (plus + minus);
}

Calibration calibrate(const LaserSpec& laser, const CavitySpec& cavity,
                      double gamma_eff, double cavity_rate_target,
                      double spont_rate_target, double S_ref) {
  if (S_ref <= 0.0) throw ConfigError("calibration reference strength must be > 0");
  if (cavity.kappa <= 0.0) throw ConfigError("kappa must be > 0");
  if (laser.delta == 0.0) throw ConfigError("laser detuning must be non-zero");

  Calibration calib;
  calib.S_ref = S_ref;
  calib.cavity_rate_target = cavity_rate_target;
  calib.spont_rate_target = spont_rate_target;

  // gamma of a reference-strength line at rest.
  const double gamma0 = pump_excitation(1.0, laser, gamma_eff, 0.0, 1.0);
  // On resonance at rest the two-branch cavity rate is 2 C_cav gamma0 g^2 / kappa.
  calib.C_cav = cavity_rate_target * cavity.kappa /
                (2.0 * gamma0 * cavity.g * cavity.g);
  // Spontaneous rate of the same reference line (branching folded to 1).
  calib.C_spont = spont_rate_target / (gamma_eff * gamma0);
  return calib;
}

RegimeReport regime_check(const LaserSpec& laser, const CavitySpec& cavity,
                          const MoleculeConstants& mol,
                          double threshold_adiabatic,
                          double threshold_cooperativity) {
  RegimeReport report;
  report.threshold_adiabatic = threshold_adiabatic;
  report.threshold_cooperativity = threshold_cooperativity;

  const double drive = std::abs(cavity.g * laser.rabi / laser.delta);
  report.ratio_adiabatic = drive > 0.0
                               ? cavity.kappa / drive
                               : std::numeric_limits<double>::infinity();
  report.cooperativity =
      cavity.g * cavity.g / (mol.gamma_eff * cavity.kappa);
  report.recoil_frequency =
      units::hbar * cavity.k_c * cavity.k_c / (2.0 * mol.mass);
  report.recoil_vs_kappa = report.recoil_frequency / cavity.kappa;
  report.pass_adiabatic = report.ratio_adiabatic >= threshold_adiabatic;
  report.pass_cooperativity = report.cooperativity >= threshold_cooperativity;
  report.comb_consistent = cavity.consistency_rel <= 1e-6;
  return report;
}

void load_cavity_laser(const KvFile& kv, LaserSpec* laser, CavitySpec* cavity) {
  LaserSpec l;
  l.wavelength = kv.get_double("laser_wavelength_m");
  if (l.wavelength <= 0.0) throw ConfigError("laser_wavelength_m must be > 0");
  l.k_L = 2.0 * units::pi / l.wavelength;
  l.rabi = units::hz_to_rad(kv.get_double("rabi_hz"));
  l.delta = units::hz_to_rad(kv.get_double("delta_hz"));
  if (l.delta == 0.0) throw ConfigError("delta_hz must be non-zero");
  l.standing_wave = kv.get_bool("standing_wave", false);

  CavitySpec c;
  c.finesse = kv.get_double("finesse", 0.0);
  c.length = kv.get_double("length_m", 0.0);
  if (kv.has("fsr_hz")) {
    c.fsr = units::hz_to_rad(kv.get_double("fsr_hz"));
  } else if (c.length > 0.0) {
    // FSR = pi c / L in rad/s for a linear resonator.
    c.fsr = units::pi * units::c_light / c.length;
  } else {
    throw ConfigError("need fsr_hz or length_m to fix the mode comb");
  }
  if (c.fsr <= 0.0) throw ConfigError("fsr_hz must be > 0");
  if (c.length <= 0.0) c.length = units::pi * units::c_light / c.fsr;

  if (kv.has("kappa_hz")) {
    c.kappa = units::hz_to_rad(kv.get_double("kappa_hz"));
  } else if (c.finesse > 0.0) {
    c.kappa = c.fsr / (2.0 * c.finesse);
  } else {
    throw ConfigError("need kappa_hz or finesse to fix the cavity linewidth");
  }
  if (c.kappa <= 0.0) throw ConfigError("kappa_hz must be > 0");
  if (c.finesse <= 0.0) c.finesse = c.fsr / (2.0 * c.kappa);

  c.g = units::hz_to_rad(kv.get_double("g_hz"));
  if (c.g < 0.0) throw ConfigError("g_hz must be >= 0");
  c.finetune = units::hz_to_rad(kv.get_double("finetune_hz", 0.0));
  c.anchor = units::hz_to_rad(kv.get_double("comb_anchor_hz", 0.0));
  if (c.anchor == 0.0) {
    // Anchor one tooth at the nominal laser frequency: only comb positions
    // relative to the scattered light matter.
    c.anchor = 2.0 * units::pi * units::c_light / l.wavelength;
  }
  // Scattered light sits within ~2% of the pump frequency across the whole
  // rotational spectrum; one wavevector serves every line.
  c.k_c = 2.0 * units::pi / l.wavelength;

  const double width_from_finesse = c.fsr / c.finesse;
  c.consistency_rel =
      std::abs(2.0 * c.kappa - width_from_finesse) / width_from_finesse;

  *laser = l;
  *cavity = c;
}

}  // namespace cavicool
