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

#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "units.hpp"
#include <json.hpp>

namespace cavicool {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace

Model Model::create(const std::string& run_config_path,
                    const Overrides& overrides) {
  Model m;
  m.cfg_ = load_run_config(run_config_path, overrides);

  const KvFile mol_kv =
      load_with_overrides(m.cfg_.molecule_path, overrides, is_molecule_key);
  const KvFile cav_kv =
      load_with_overrides(m.cfg_.cavity_path, overrides, is_cavity_key);

  System sys;
  sys.mol = MoleculeConstants::from_kv(mol_kv);
  sys.levels = build_levels(sys.mol, m.cfg_.vmax, m.cfg_.jmax);
  sys.lines = enumerate_lines(sys.levels, sys.mol);
  load_cavity_laser(cav_kv, &sys.laser, &sys.cavity);
  sys.nominal_laser = 2.0 * units::pi * units::c_light / sys.laser.wavelength;

  const double cavity_target = cav_kv.get_double("calib_cavity_rate_hz", 1000.0);
  const double spont_target = cav_kv.get_double("calib_spont_rate_hz", 0.8);
  const double ref_strength = cav_kv.get_double(
      "calib_ref_strength", sys.mol.alpha_iso * sys.mol.alpha_iso);
  if (cavity_target <= 0.0 || spont_target <= 0.0)
    throw ConfigError("calibration target rates must be > 0");
  sys.calib = calibrate(sys.laser, sys.cavity, sys.mol.gamma_eff, cavity_target,
                        spont_target, ref_strength);

  sys.trans.doppler_tracking = m.cfg_.trans_doppler_tracking;
  sys.trans.tracking_gain = m.cfg_.trans_tracking_gain;
  sys.trans.recoil_per_event = m.cfg_.trans_recoil_per_event;

  const int ground = sys.levels.index_of(0, 0);
  sys.rayleigh_ground = -1;
  for (int i = 0; i < static_cast<int>(sys.lines.size()); ++i) {
    if (sys.lines[i].initial == ground && sys.lines[i].final == ground) {
      sys.rayleigh_ground = i;
      break;
    }
  }
  m.sys_ = std::move(sys);
  return m;
}

std::vector<double> Model::initial_populations() const {
  return boltzmann_populations(sys_.levels, cfg_.temp_rot_K);
}

std::string Model::spectrum_csv() const {
  const auto folded = fold_lines(sys_.lines, sys_.cavity, sys_.nominal_laser);
  std::string out = "line_id,Ji,Jf,kind,shift_hz,folded_hz,comb_order,strength\n";
  for (const auto& f : folded) {
    const RamanLine& line = sys_.lines[f.line];
    out += std::to_string(f.line) + "," +
           std::to_string(sys_.levels[line.initial].J) + "," +
           std::to_string(sys_.levels[line.final].J) + "," +
           to_string(line.kind) + "," + format_double(units::rad_to_hz(line.shift)) +
           "," + format_double(units::rad_to_hz(f.folded)) + "," +
           std::to_string(f.order) + "," + format_double(line.strength) + "\n";
  }
  return out;
}

std::string Model::spectrum_summary_json() const {
  const auto folded = fold_lines(sys_.lines, sys_.cavity, sys_.nominal_laser);
  int anti = 0;
  double min_shift = 0.0, max_shift = 0.0;
  bool first = true;
  for (const auto& line : sys_.lines) {
    if (line.kind != LineKind::anti_stokes) continue;
    ++anti;
    if (first || line.shift < min_shift) min_shift = line.shift;
    if (first || line.shift > max_shift) max_shift = line.shift;
    first = false;
  }
  std::int64_t order_lo = 0, order_hi = 0;
  double max_fold = 0.0;
  for (size_t i = 0; i < folded.size(); ++i) {
    order_lo = i == 0 ? folded[i].order : std::min(order_lo, folded[i].order);
    order_hi = i == 0 ? folded[i].order : std::max(order_hi, folded[i].order);
    max_fold = std::max(max_fold, folded[i].folded);
  }
  json j;
  j["line_count"] = sys_.lines.size();
  j["anti_stokes_count"] = anti;
  j["span_hz"] = anti > 0 ? units::rad_to_hz(max_shift - min_shift) : 0.0;
  j["max_anti_stokes_shift_hz"] = anti > 0 ? units::rad_to_hz(max_shift) : 0.0;
  j["comb_order_min"] = order_lo;
  j["comb_order_max"] = order_hi;
  j["fsr_hz"] = units::rad_to_hz(sys_.cavity.fsr);
  j["max_folded_hz"] = units::rad_to_hz(max_fold);
  return j.dump(2) + "\n";
}

Schedule Model::auto_schedule() const {
  GreedyParams params;
  params.epoch = cfg_.epoch_s;
  params.horizon = cfg_.horizon_s;
  params.target_ground = cfg_.target_ground;
  params.tolerance = cfg_.match_tolerance_kappa * sys_.cavity.kappa;
  params.window = units::hz_to_rad(cfg_.finetune_window_hz);
  params.max_simultaneous = cfg_.max_simultaneous;
  Schedule sched = greedy_schedule(sys_, initial_populations(),
                                   cfg_.temp_trans_K, params);
  const auto report =
      validate_schedule(sys_, sched, params.tolerance, params.max_simultaneous);
  if (!report.ok)
    throw InvariantError(
        "auto schedule failed validation: " +
        (report.issues.empty() ? std::string("unknown issue")
                               : report.issues.front().message));
  return sched;
}

Schedule Model::resolve_schedule() const {
  if (cfg_.schedule == "auto") return auto_schedule();
  return parse_schedule_csv(read_file(cfg_.schedule));
}

Schedule Model::elastic_precool(double duration) const {
  return elastic_schedule(sys_, duration, -sys_.cavity.kappa);
}

Model::RunOutput Model::run(const Schedule& schedule) const {
  SimState init;
  init.time = 0.0;
  init.populations = initial_populations();
  init.T_tr = cfg_.temp_trans_K;

  RunOutput out;
  out.series = simulate(sys_, schedule, init, cfg_.cadence_s);

  std::string csv = "t_s,meanJ,T_tr_K";
  for (size_t i = 0; i < sys_.levels.size(); ++i)
    csv += ",P_v" + std::to_string(sys_.levels[i].v) + "_J" +
           std::to_string(sys_.levels[i].J);
  csv += "\n";
  for (size_t r = 0; r < out.series.times.size(); ++r) {
    csv += format_double(out.series.times[r]) + "," +
           format_double(out.series.meanJ[r]) + "," +
           format_double(out.series.T_tr[r]);
    for (double p : out.series.populations[r]) csv += "," + format_double(p);
    csv += "\n";
  }
  out.timeseries_csv = std::move(csv);

  const auto& fin = out.series.final_state;
  double ground = 0.0;
  for (size_t i = 0; i < fin.populations.size(); ++i)
    if (sys_.levels[i].J <= 1) ground += fin.populations[i];

  json j;
  j["final"]["t_s"] = fin.time;
  j["final"]["meanJ"] = mean_J(fin.populations, sys_.levels);
  j["final"]["T_tr_K"] = fin.T_tr;
  j["final"]["ground_population"] = ground;
  json pops = json::object();
  for (size_t i = 0; i < fin.populations.size(); ++i)
    pops["P_v" + std::to_string(sys_.levels[i].v) + "_J" +
         std::to_string(sys_.levels[i].J)] = fin.populations[i];
  j["final"]["populations"] = pops;
  j["segments"] = json::array();
  for (const auto& seg : out.series.segments) {
    json s;
    s["index"] = seg.index;
    s["t_start_s"] = seg.t_start;
    s["duration_s"] = seg.duration;
    s["laser_hz"] = units::rad_to_hz(seg.laser);
    s["finetune_hz"] = units::rad_to_hz(seg.finetune);
    s["lines"] = seg.lines;
    s["meanJ_end"] = seg.meanJ_end;
    s["T_end_K"] = seg.T_end;
    j["segments"].push_back(s);
  }
  if (!schedule.diagnostic.empty())
    j["schedule_diagnostic"] = schedule.diagnostic;
  out.summary_json = j.dump(2) + "\n";
  return out;
}

std::string Model::check_json(bool* pass) const {
  const RegimeReport report = regime_check(sys_.laser, sys_.cavity, sys_.mol);
  json j;
  j["adiabatic"]["ratio"] = report.ratio_adiabatic;
  j["adiabatic"]["threshold"] = report.threshold_adiabatic;
  j["adiabatic"]["pass"] = report.pass_adiabatic;
  j["cooperativity"]["value"] = report.cooperativity;
  j["cooperativity"]["threshold"] = report.threshold_cooperativity;
  j["cooperativity"]["pass"] = report.pass_cooperativity;
  j["recoil"]["frequency_hz"] = units::rad_to_hz(report.recoil_frequency);
  j["recoil"]["vs_kappa"] = report.recoil_vs_kappa;
  j["comb"]["consistency_rel"] = sys_.cavity.consistency_rel;
  j["comb"]["consistent"] = report.comb_consistent;
  j["calibration"]["C_cav"] = sys_.calib.C_cav;
  j["calibration"]["C_spont"] = sys_.calib.C_spont;
  j["calibration"]["reference_strength"] = sys_.calib.S_ref;
  j["calibration"]["cavity_rate_target_hz"] = sys_.calib.cavity_rate_target;
  j["calibration"]["spont_rate_target_hz"] = sys_.calib.spont_rate_target;
  j["pass"] = report.pass();
  if (pass) *pass = report.pass();
  return j.dump(2) + "\n";
}

std::vector<double> Model::anti_stokes_peak_rates() const {
  const double p_th = std::sqrt(sys_.mol.mass * units::k_boltzmann *
                                std::max(0.0, cfg_.temp_trans_K));
  std::vector<std::pair<double, double>> shift_rate;
  for (const auto& line : sys_.lines) {
    if (line.kind != LineKind::anti_stokes) continue;
    double rate = 0.0;
    for (const double p : {p_th, -p_th}) {
      const double gamma =
          pump_excitation(line.strength / sys_.calib.S_ref, sys_.laser,
                          sys_.mol.gamma_eff, p, sys_.mol.mass);
      rate += 0.5 * cavity_emission_rate(gamma, sys_.cavity, 0.0, p,
                                         sys_.mol.mass, 1.0, sys_.calib);
    }
    shift_rate.emplace_back(line.shift, rate);
  }
  std::sort(shift_rate.begin(), shift_rate.end());
  std::vector<double> rates;
  rates.reserve(shift_rate.size());
  for (const auto& [shift, rate] : shift_rate) {
    (void)shift;
    rates.push_back(rate);
  }
  return rates;
}

}  // namespace cavicool
