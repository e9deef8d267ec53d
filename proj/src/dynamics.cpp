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

#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"
#include "units.hpp"

namespace cavicool {

namespace {

constexpr double kIntegratorDtMax = 1e-3;  // s, cap for the population stepper
constexpr int kQuadratureOrder = 96;       // Gauss-Hermite nodes for thermal averages

// Gauss-Hermite nodes/weights for integral of exp(-y^2) f(y) dy, computed by
// Newton iteration on the normalized Hermite recurrence.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermite gauss_hermite(int n) {
  GaussHermite q;
  q.nodes.assign(n, 0.0);
  q.weights.assign(n, 0.0);
  const double eps = 1e-14;
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * q.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * q.nodes[1];
    } else {
      z = 2.0 * z - q.nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = std::pow(units::pi, -0.25);
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= eps) break;
    }
    q.nodes[i] = z;
    q.nodes[n - 1 - i] = -z;
    q.weights[i] = 2.0 / (pp * pp);
    q.weights[n - 1 - i] = q.weights[i];
  }
  return q;
}

const GaussHermite& quadrature() {
  static const GaussHermite q = gauss_hermite(kQuadratureOrder);
  return q;
}

void rk4_step(const RateMatrix& W, std::vector<double>& P, double dt,
              std::vector<double>& k1, std::vector<double>& k2,
              std::vector<double>& k3, std::vector<double>& k4,
              std::vector<double>& tmp) {
  const int n = W.n;
  auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      const double* row = &W.a[static_cast<size_t>(r) * n];
      for (int c = 0; c < n; ++c) acc += row[c] * x[c];
      out[r] = acc;
    }
  };
  apply(P, k1);
  for (int i = 0; i < n; ++i) tmp[i] = P[i] + 0.5 * dt * k1[i];
  apply(tmp, k2);
  for (int i = 0; i < n; ++i) tmp[i] = P[i] + 0.5 * dt * k2[i];
  apply(tmp, k3);
  for (int i = 0; i < n; ++i) tmp[i] = P[i] + dt * k3[i];
  apply(tmp, k4);
  for (int i = 0; i < n; ++i)
    P[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

double population_step_bound(const RateMatrix& W, double dt_max) {
  double maxdiag = 0.0;
  for (int i = 0; i < W.n; ++i) maxdiag = std::max(maxdiag, std::abs(W.at(i, i)));
  double bound = dt_max;
  if (maxdiag > 0.0) bound = std::min(bound, 0.1 / maxdiag);
  if (bound < 1e-12)
    throw InvariantError("integrator step-size underflow: rates imply steps below 1e-12 s");
  return bound;
}

double sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Elastic scattering rate of the reference ground line on resonance at rest;
// sets the overall scale of the translational kernel. The small thermal
// admixture of higher-J elastic strength (< 3%) is ignored.
double elastic_peak_rate(const System& sys) {
  if (sys.rayleigh_ground < 0)
    throw InvariantError("system has no ground elastic line");
  const RamanLine& ray = sys.lines[sys.rayleigh_ground];
  const double gamma0 = pump_excitation(ray.strength / sys.calib.S_ref,
                                        sys.laser, sys.mol.gamma_eff, 0.0,
                                        sys.mol.mass);
  return cavity_emission_rate(gamma0, sys.cavity, 0.0, 0.0, sys.mol.mass, 1.0,
                              sys.calib);
}

}  // namespace

double Schedule::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments) total += seg.duration;
  return total;
}

RateMatrix build_rate_matrix(const System& sys, double laser_freq,
                             double finetune, double T_tr) {
  const int n = static_cast<int>(sys.levels.size());
  if (n == 0) throw InvariantError("empty level set");
  RateMatrix W(n);

  CavitySpec cav = sys.cavity;
  cav.finetune = finetune;
  const double spacing = cav.spacing();
  const double p_th =
      std::sqrt(sys.mol.mass * units::k_boltzmann * std::max(0.0, T_tr));

  // Per-initial-level strength totals normalize the spontaneous branching.
  std::vector<double> level_strength(n, 0.0);
  for (const auto& line : sys.lines) level_strength[line.initial] += line.strength;

  for (const auto& line : sys.lines) {
    if (line.initial == line.final) continue;
    const double dw =
        wrap_to_half(laser_freq + line.shift - cav.anchor, spacing);
    const double branching = line.strength / level_strength[line.initial];
    double rate = 0.0;
    for (const double p : {p_th, -p_th}) {
      const double gamma_level =
          pump_excitation(level_strength[line.initial] / sys.calib.S_ref,
                          sys.laser, sys.mol.gamma_eff, p, sys.mol.mass);
      const double gamma_line =
          pump_excitation(line.strength / sys.calib.S_ref, sys.laser,
                          sys.mol.gamma_eff, p, sys.mol.mass);
      rate += 0.5 * (spontaneous_raman_rate(gamma_level, branching,
                                            sys.mol.gamma_eff, sys.calib) +
                     cavity_emission_rate(gamma_line, cav, dw, p, sys.mol.mass,
                                          1.0, sys.calib));
    }
    W.at(line.final, line.initial) += rate;
  }
  for (int c = 0; c < n; ++c) {
    double col = 0.0;
    for (int r = 0; r < n; ++r)
      if (r != c) col += W.at(r, c);
    W.at(c, c) = -col;
  }
  return W;
}

std::vector<double> integrate_populations(const RateMatrix& W,
                                          std::vector<double> P,
                                          double duration, double dt_max) {
  if (static_cast<int>(P.size()) != W.n)
    throw InvariantError("population vector does not match rate matrix size");
  if (duration <= 0.0) return P;
  const double bound = population_step_bound(W, dt_max);
  const int steps = std::max(1, static_cast<int>(std::ceil(duration / bound)));
  const double dt = duration / steps;
  std::vector<double> k1(W.n), k2(W.n), k3(W.n), k4(W.n), tmp(W.n);
  for (int s = 0; s < steps; ++s) rk4_step(W, P, dt, k1, k2, k3, k4, tmp);
  return P;
}

double mean_J(const std::vector<double>& P, const LevelSet& levels) {
  if (P.size() != levels.size())
    throw InvariantError("population vector does not match level set size");
  double acc = 0.0;
  for (size_t i = 0; i < P.size(); ++i)
    acc += P[i] * static_cast<double>(levels[i].J);
  return acc;
}

double translational_energy_rate(const System& sys, double delta_omega,
                                 double energy) {
  const double E = std::max(0.0, energy);
  const double kappa = sys.cavity.kappa;
  const double k_c = sys.cavity.k_c;
  const double mass = sys.mol.mass;
  const double sigma_u = k_c * std::sqrt(2.0 * E / mass);
  const double width = sys.trans.doppler_tracking
                           ? std::sqrt(kappa * kappa + sigma_u * sigma_u)
                           : kappa;
  const double dw_eff =
      sys.trans.doppler_tracking
          ? delta_omega + sign_of(delta_omega) * sys.trans.tracking_gain * sigma_u
          : delta_omega;
  const double e_rec =
      units::hbar * units::hbar * k_c * k_c / (2.0 * mass);
  const double heat = sys.trans.recoil_per_event * e_rec;
  const double peak = elastic_peak_rate(sys);

  const GaussHermite& q = quadrature();
  const double w2 = width * width;
  double acc = 0.0;
  for (int i = 0; i < kQuadratureOrder; ++i) {
    const double u = std::sqrt(2.0) * sigma_u * q.nodes[i];
    const double lp = w2 / ((dw_eff + u) * (dw_eff + u) + w2);
    const double lm = w2 / ((dw_eff - u) * (dw_eff - u) + w2);
    const double val =
        0.5 * peak *
        (lp * (-units::hbar * u + heat) + lm * (units::hbar * u + heat));
    acc += q.weights[i] * val;
  }
  return acc / std::sqrt(units::pi);
}

TransResult translational_trajectory(const System& sys, double T0,
                                     double delta_omega, double duration) {
  if (T0 <= 0.0) throw ConfigError("translational start temperature must be > 0");
  if (duration <= 0.0) throw ConfigError("translational duration must be > 0");
  if (delta_omega >= 0.0)
    throw ConfigError(
        "heating configuration: the elastic drive must sit on the "
        "low-frequency side of its resonance (delta_omega < 0)");

  auto f = [&](double E) {
    return translational_energy_rate(sys, delta_omega, E);
  };

  TransResult out;
  double E = 0.5 * units::k_boltzmann * T0;
  double t = 0.0;
  std::vector<double> energies;
  out.times.push_back(0.0);
  energies.push_back(E);
  while (t < duration - 1e-15) {
    const double d0 = f(E);
    double dt = std::min(0.02, std::max(1e-7, 0.02 * E / (std::abs(d0) + 1e-300)));
    if (t + dt > duration) dt = duration - t;
    const double k2 = f(E + 0.5 * dt * d0);
    const double k3 = f(E + 0.5 * dt * k2);
    const double k4 = f(E + dt * k3);
    E = std::max(1e-40, E + dt / 6.0 * (d0 + 2.0 * k2 + 2.0 * k3 + k4));
    t += dt;
    out.times.push_back(t);
    energies.push_back(E);
  }

  const double E0 = energies.front();
  const double Ef = energies.back();
  out.T_final = 2.0 * Ef / units::k_boltzmann;
  out.temps.reserve(energies.size());
  for (double e : energies)
    out.temps.push_back(2.0 * e / units::k_boltzmann);

  const double target = Ef + (E0 - Ef) / std::exp(1.0);
  for (size_t i = 1; i < energies.size(); ++i) {
    if (energies[i] <= target && energies[i - 1] > target) {
      const double frac =
          (energies[i - 1] - target) / (energies[i - 1] - energies[i]);
      out.t_1e = out.times[i - 1] + frac * (out.times[i] - out.times[i - 1]);
      out.reached_1e = true;
      break;
    }
  }
  return out;
}

namespace {

struct InvariantMonitor {
  double even_sum0 = 0.0;
  const LevelSet* levels = nullptr;

  void baseline(const std::vector<double>& P, const LevelSet& lv) {
    levels = &lv;
    even_sum0 = even_sum(P);
  }
  double even_sum(const std::vector<double>& P) const {
    double acc = 0.0;
    for (size_t i = 0; i < P.size(); ++i)
      if ((*levels)[i].J % 2 == 0) acc += P[i];
    return acc;
  }
  void check(const std::vector<double>& P, double t) const {
    double total = 0.0;
    double lowest = 0.0;
    for (double p : P) {
      total += p;
      lowest = std::min(lowest, p);
    }
    std::ostringstream where;
    where.precision(12);
    if (std::abs(total - 1.0) > 1e-9) {
      where << "probability conservation tripped at t=" << t
            << " s: sum(P)-1=" << total - 1.0;
      throw InvariantError(where.str());
    }
    if (lowest < -1e-12) {
      where << "population negativity tripped at t=" << t << " s: min(P)="
            << lowest;
      throw InvariantError(where.str());
    }
    if (std::abs(even_sum(P) - even_sum0) > 1e-9) {
      where << "parity-ladder conservation tripped at t=" << t
            << " s: drift=" << even_sum(P) - even_sum0;
      throw InvariantError(where.str());
    }
  }
};

}  // namespace

TimeSeries simulate(const System& sys, const Schedule& schedule,
                    const SimState& initial, double cadence) {
  if (cadence <= 0.0) throw ConfigError("output cadence must be > 0");
  const int n = static_cast<int>(sys.levels.size());
  if (static_cast<int>(initial.populations.size()) != n)
    throw ConfigError("initial populations do not match the level set");
  for (const auto& seg : schedule.segments)
    if (seg.duration <= 0.0)
      throw ConfigError("schedule segments must have positive durations");

  const double total = schedule.total_duration();

  // Event times: output marks plus segment boundaries, processed in order so
  // rows land exactly on the cadence grid and the final time.
  std::vector<double> boundaries;
  double cum = 0.0;
  for (const auto& seg : schedule.segments) {
    cum += seg.duration;
    boundaries.push_back(cum);
  }
  std::vector<double> marks;
  for (int k = 1; static_cast<double>(k) * cadence <= total + 1e-12; ++k)
    marks.push_back(static_cast<double>(k) * cadence);
  if (total > 1e-12 && (marks.empty() || std::abs(marks.back() - total) > 1e-12))
    marks.push_back(total);

  TimeSeries ts;
  std::vector<double> P = initial.populations;
  double E = 0.5 * units::k_boltzmann * std::max(0.0, initial.T_tr);

  InvariantMonitor monitor;
  monitor.baseline(P, sys.levels);
  monitor.check(P, 0.0);

  auto emit = [&](double t) {
    ts.times.push_back(t);
    ts.meanJ.push_back(mean_J(P, sys.levels));
    ts.T_tr.push_back(2.0 * E / units::k_boltzmann);
    ts.populations.push_back(P);
  };
  emit(0.0);

  size_t seg_idx = 0;
  double t = 0.0;
  RateMatrix W(n);
  double dw_elastic = 0.0;
  double seg_start = 0.0;
  auto enter_segment = [&](size_t idx) {
    const auto& seg = schedule.segments[idx];
    W = build_rate_matrix(sys, seg.laser, seg.finetune,
                          2.0 * E / units::k_boltzmann);
    CavitySpec cav = sys.cavity;
    cav.finetune = seg.finetune;
    dw_elastic = wrap_to_half(seg.laser - cav.anchor, cav.spacing());
    seg_start = t;
  };
  if (!schedule.segments.empty()) enter_segment(0);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto advance = [&](double span) {
    if (span <= 0.0) return;
    const double bound = population_step_bound(W, kIntegratorDtMax);
    const int steps =
        std::max(1, static_cast<int>(std::ceil(span / bound)));
    const double dt = span / steps;
    for (int s = 0; s < steps; ++s) {
      rk4_step(W, P, dt, k1, k2, k3, k4, tmp);
      const double d0 = translational_energy_rate(sys, dw_elastic, E);
      const double e2 =
          translational_energy_rate(sys, dw_elastic, E + 0.5 * dt * d0);
      const double e3 =
          translational_energy_rate(sys, dw_elastic, E + 0.5 * dt * e2);
      const double e4 = translational_energy_rate(sys, dw_elastic, E + dt * e3);
      E = std::max(0.0, E + dt / 6.0 * (d0 + 2.0 * e2 + 2.0 * e3 + e4));
    }
  };

  size_t mi = 0, bi = 0;
  while (mi < marks.size() || bi < boundaries.size()) {
    const double next_mark =
        mi < marks.size() ? marks[mi] : std::numeric_limits<double>::infinity();
    const double next_boundary = bi < boundaries.size()
                                     ? boundaries[bi]
                                     : std::numeric_limits<double>::infinity();
    const double e = std::min(next_mark, next_boundary);
    const bool do_mark = next_mark <= e + 1e-12;
    const bool do_boundary = next_boundary <= e + 1e-12;
    advance(e - t);
    t = e;
    if (do_mark) {
      monitor.check(P, t);
      emit(t);
      ++mi;
    }
    if (do_boundary) {
      const auto& seg = schedule.segments[seg_idx];
      SegmentDiag diag;
      diag.index = static_cast<int>(seg_idx);
      diag.t_start = seg_start;
      diag.duration = seg.duration;
      diag.laser = seg.laser;
      diag.finetune = seg.finetune;
      diag.lines = seg.lines;
      diag.meanJ_end = mean_J(P, sys.levels);
      diag.T_end = 2.0 * E / units::k_boltzmann;
      ts.segments.push_back(diag);
      ++bi;
      ++seg_idx;
      if (seg_idx < schedule.segments.size()) enter_segment(seg_idx);
    }
  }

  ts.final_state.time = t;
  ts.final_state.populations = P;
  ts.final_state.T_tr = 2.0 * E / units::k_boltzmann;
  return ts;
}

}  // namespace cavicool
