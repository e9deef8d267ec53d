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

namespace cavicool::units {

// CODATA 2018 values. All unit conversions in the project go through this
// header: spectroscopy is read in 1/cm, internal frequencies are rad/s, and
// every user-facing frequency is plain Hz.
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double c_light = 299792458.0;          // m/s (exact)
inline constexpr double h_planck = 6.62607015e-34;      // J s (exact)
inline constexpr double hbar = h_planck / (2.0 * pi);   // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K (exact)
inline constexpr double atomic_mass = 1.66053906660e-27; // kg

// 1/cm -> rad/s
inline constexpr double wavenumber_to_rad(double cm) {
  return 2.0 * pi * c_light * 100.0 * cm;
}

// Hz -> rad/s and back
inline constexpr double hz_to_rad(double hz) { return 2.0 * pi * hz; }
inline constexpr double rad_to_hz(double rad) { return rad / (2.0 * pi); }

}  // namespace cavicool::units
