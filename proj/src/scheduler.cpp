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

#include "scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "errors.hpp"
#include "units.hpp"

namespace cavicool {

namespace {

constexpr double kGreedyDtMax = 1e-3;  // s, candidate-evaluation step cap

// Round a rad/s frequency through its Hz file representation so in-memory
// schedules and re-parsed CSV schedules are bit-identical.
double canonical_rad(double rad) { return units::hz_to_rad(units::rad_to_hz(rad)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

struct Candidate {
  std::vector<int> lines;  // indices into sys.lines, ascending
  double laser = 0.0;      // rad/s, canonicalized
  double finetune = 0.0;   // rad/s, canonicalized
  std::string annotation;
};

std::string annotate(const System& sys, const std::vector<int>& line_ids) {
  std::string out;
  for (size_t k = 0; k < line_ids.size(); ++k) {
    const RamanLine& line = sys.lines[line_ids[k]];
    const RoVibLevel& li = sys.levels[line.initial];
    const RoVibLevel& lf = sys.levels[line.final];
    if (k > 0) out += "+";
    out += std::to_string(li.J) + "->" + std::to_string(lf.J);
    if (li.v != lf.v || li.v != 0)
      out += "(v" + std::to_string(li.v) + "->v" + std::to_string(lf.v) + ")";
  }
  return out;
}

// Places one line exactly on the comb tooth nearest the nominal laser.
double single_line_laser(const System& sys, const RamanLine& line) {
  const double s = sys.cavity.fsr;
  const double n = std::round((sys.nominal_laser + line.shift - sys.cavity.anchor) / s);
  return sys.cavity.anchor + n * s - line.shift;
}

bool stokes_clear(const System& sys, double laser, double finetune,
                  double tolerance) {
  CavitySpec cav = sys.cavity;
  cav.finetune = finetune;
  const auto matches = find_resonances(sys.lines, cav, laser, tolerance);
  for (const auto& m : matches)
    if (m.resonant && m.kind == LineKind::stokes) return false;
  return true;
}

}  // namespace

Schedule greedy_schedule(const System& sys, const std::vector<double>& P0,
                         double T_tr, const GreedyParams& params) {
  if (params.epoch <= 0.0) throw ConfigError("scheduler epoch must be > 0");
  if (params.horizon < 0.0)
    throw ConfigError("scheduler horizon must be >= 0");
  if (params.tolerance <= 0.0)
    throw ConfigError("scheduler match tolerance must be > 0");
  if (P0.size() != sys.levels.size())
    throw ConfigError("initial populations do not match the level set");

  // Anti-Stokes lines in ascending shift order; candidates are each line
  // alone, then each co-alignable pair.
  std::vector<int> anti;
  for (int i = 0; i < static_cast<int>(sys.lines.size()); ++i)
    if (sys.lines[i].kind == LineKind::anti_stokes) anti.push_back(i);
  std::stable_sort(anti.begin(), anti.end(), [&](int a, int b) {
    return sys.lines[a].shift < sys.lines[b].shift;
  });

  std::vector<Candidate> candidates;
  for (int id : anti) {
    Candidate c;
    c.lines = {id};
    c.laser = canonical_rad(single_line_laser(sys, sys.lines[id]));
    c.finetune = 0.0;
    c.annotation = annotate(sys, c.lines);
    if (!stokes_clear(sys, c.laser, c.finetune, params.tolerance)) continue;
    candidates.push_back(std::move(c));
  }
  for (size_t x = 0; x < anti.size(); ++x) {
    for (size_t y = x + 1; y < anti.size(); ++y) {
      const auto sol = solve_finetune(sys.lines[anti[x]], sys.lines[anti[y]],
                                      sys.cavity, sys.nominal_laser,
                                      params.window, params.tolerance);
      if (!sol.feasible) continue;
      Candidate c;
      c.lines = {anti[x], anti[y]};
      c.laser = canonical_rad(sol.laser);
      c.finetune = canonical_rad(sol.finetune);
      c.annotation = annotate(sys, c.lines);
      if (!stokes_clear(sys, c.laser, c.finetune, params.tolerance)) continue;
      candidates.push_back(std::move(c));
    }
  }

  Schedule sched;
  if (candidates.empty()) {
    sched.diagnostic = "no addressable anti-Stokes line; empty schedule";
    return sched;
  }

  // One rate matrix per candidate; the search temperature is fixed.
  std::vector<RateMatrix> mats;
  mats.reserve(candidates.size());
  for (const auto& c : candidates)
    mats.push_back(build_rate_matrix(sys, c.laser, c.finetune, T_tr));

  auto ground_population = [&](const std::vector<double>& P) {
    double acc = 0.0;
    for (size_t i = 0; i < P.size(); ++i)
      if (sys.levels[i].J <= 1) acc += P[i];
    return acc;
  };

  std::vector<double> P = P0;
  double t = 0.0;
  while (t < params.horizon - 1e-9) {
    if (ground_population(P) >= params.target_ground) {
      sched.diagnostic = "target ground population reached";
      break;
    }
    const double dt_e = std::min(params.epoch, params.horizon - t);
    const double j_now = mean_J(P, sys.levels);
    int best = -1;
    double best_drop = -1e18;
    std::vector<double> best_P;
    for (size_t c = 0; c < candidates.size(); ++c) {
      std::vector<double> Pn =
          integrate_populations(mats[c], P, dt_e, kGreedyDtMax);
      const double drop = j_now - mean_J(Pn, sys.levels);
      if (drop > best_drop + 1e-15) {
        best_drop = drop;
        best = static_cast<int>(c);
        best_P = std::move(Pn);
      }
    }
    if (best < 0 || best_drop <= 0.0) {
      sched.diagnostic =
          "no candidate with positive population flux; schedule truncated";
      break;
    }
    const Candidate& chosen = candidates[best];
    if (!sched.segments.empty() &&
        sched.segments.back().laser == chosen.laser &&
        sched.segments.back().finetune == chosen.finetune) {
      sched.segments.back().duration += dt_e;
    } else {
      ScheduleSegment seg;
      seg.t_start = t;
      seg.duration = dt_e;
      seg.laser = chosen.laser;
      seg.finetune = chosen.finetune;
      seg.lines = chosen.annotation;
      sched.segments.push_back(seg);
    }
    P = std::move(best_P);
    t += dt_e;
  }
  return sched;
}

Schedule elastic_schedule(const System& sys, double duration, double detuning) {
  if (duration <= 0.0) throw ConfigError("schedule duration must be > 0");
  if (sys.rayleigh_ground < 0)
    throw ConfigError("level set has no elastic ground line");
  const double s = sys.cavity.fsr;
  const double n = std::round((sys.nominal_laser - sys.cavity.anchor) / s);
  Schedule sched;
  ScheduleSegment seg;
  seg.t_start = 0.0;
  seg.duration = duration;
  seg.laser = canonical_rad(sys.cavity.anchor + n * s + detuning);
  seg.finetune = 0.0;
  seg.lines = "R";
  sched.segments.push_back(seg);
  return sched;
}

ValidationReport validate_schedule(const System& sys, const Schedule& schedule,
                                   double tolerance, int max_simultaneous) {
  ValidationReport report;
  for (size_t s = 0; s < schedule.segments.size(); ++s) {
    const auto& seg = schedule.segments[s];
    CavitySpec cav = sys.cavity;
    cav.finetune = seg.finetune;
    const auto matches = find_resonances(sys.lines, cav, seg.laser, tolerance);
    std::vector<int> hits;
    for (const auto& m : matches) {
      if (!m.resonant) continue;
      hits.push_back(m.line);
      if (m.kind == LineKind::stokes) {
        const RamanLine& line = sys.lines[m.line];
        ValidationIssue issue;
        issue.segment = static_cast<int>(s);
        issue.error = true;
        issue.message = "segment " + std::to_string(s) +
                        " co-resonates Stokes line J" +
                        std::to_string(sys.levels[line.initial].J) + "->J" +
                        std::to_string(sys.levels[line.final].J);
        report.issues.push_back(issue);
        report.ok = false;
      }
    }
    if (static_cast<int>(hits.size()) > max_simultaneous) {
      ValidationIssue issue;
      issue.segment = static_cast<int>(s);
      issue.error = false;
      issue.message = "segment " + std::to_string(s) + " drives " +
                      std::to_string(hits.size()) +
                      " simultaneous resonances (limit " +
                      std::to_string(max_simultaneous) + ")";
      report.issues.push_back(issue);
    }
    report.resonant.push_back(std::move(hits));
  }
  return report;
}

std::string write_schedule_csv(const Schedule& schedule) {
  std::string out = "t_start_s,duration_s,laser_hz,finetune_hz,lines\n";
  for (const auto& seg : schedule.segments) {
    out += format_double(seg.t_start) + "," + format_double(seg.duration) +
           "," + format_double(units::rad_to_hz(seg.laser)) + "," +
           format_double(units::rad_to_hz(seg.finetune)) + "," + seg.lines +
           "\n";
  }
  return out;
}

Schedule parse_schedule_csv(const std::string& text) {
  Schedule sched;
  std::istringstream in(text);
  std::string row;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, row)) {
    ++lineno;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    if (!header_seen) {
      if (row.rfind("t_start_s,", 0) != 0)
        throw ConfigError("schedule CSV: missing header at line " +
                          std::to_string(lineno));
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream cells(row);
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    if (fields.size() < 4 || fields.size() > 5)
      throw ConfigError("schedule CSV: expected 5 columns at line " +
                        std::to_string(lineno));
    auto num = [&](const std::string& v, const char* what) {
      char* end = nullptr;
      const double x = std::strtod(v.c_str(), &end);
      if (end == v.c_str() || *end != '\0')
        throw ConfigError(std::string("schedule CSV: bad ") + what +
                          " at line " + std::to_string(lineno));
      return x;
    };
    ScheduleSegment seg;
    seg.t_start = num(fields[0], "t_start_s");
    seg.duration = num(fields[1], "duration_s");
    seg.laser = units::hz_to_rad(num(fields[2], "laser_hz"));
    seg.finetune = units::hz_to_rad(num(fields[3], "finetune_hz"));
    seg.lines = fields.size() == 5 ? fields[4] : "";
    if (seg.duration <= 0.0)
      throw ConfigError("schedule CSV: non-positive duration at line " +
                        std::to_string(lineno));
    sched.segments.push_back(seg);
  }
  if (!header_seen) throw ConfigError("schedule CSV: empty file");
  return sched;
}

}  // namespace cavicool
