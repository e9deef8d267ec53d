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

// Command-line front end for the cavity-enhanced Raman cooling simulator.
// Talks to the core exclusively through the public C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavicool.h"

namespace {

// Exit codes shared with the C API status values.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitRegime = 4;

int status_to_exit(int status) {
  switch (status) {
    case CCOOL_OK: return kExitOk;
    case CCOOL_EINVARIANT: return kExitInvariant;
    case CCOOL_EREGIME: return kExitRegime;
    case CCOOL_ECONFIG:
    case CCOOL_EINVAL:
    default: return kExitConfig;
  }
}

struct ModelDeleter {
  void operator()(ccool_model* m) const { ccool_model_destroy(m); }
};
using ModelPtr = std::unique_ptr<ccool_model, ModelDeleter>;

struct BufDeleter {
  void operator()(char* p) const { ccool_free(p); }
};
using Buf = std::unique_ptr<char, BufDeleter>;

// Options common to every subcommand.
struct CommonOpts {
  std::string config;
  std::string molecule;
  std::string out_dir;
  std::vector<std::string> sets;
  double horizon_s = -1.0;
  bool horizon_set = false;
  long long seed = 0;  // reserved: the model itself is deterministic
  int jobs = 1;        // reserved: single-run commands have no parallel work
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("-c,--config", opts->config,
                  "Run-configuration file (key = value lines)")
      ->required();
  cmd->add_option("--molecule", opts->molecule,
                  "Molecule file overriding the one named in the config");
  cmd->add_option("-o,--out", opts->out_dir,
                  "Output directory (created if missing); artifacts print to "
                  "stdout when omitted");
  cmd->add_option("--set", opts->sets,
                  "Override any config key, e.g. --set jmax=6 (repeatable)");
  cmd->add_option("--horizon-s", opts->horizon_s,
                  "Override the cooling-schedule horizon in seconds")
      ->each([opts](const std::string&) { opts->horizon_set = true; });
  cmd->add_option("--seed", opts->seed,
                  "Random seed (reserved; deterministic commands ignore it)");
  cmd->add_option("-j,--jobs", opts->jobs,
                  "Worker count for parameter sweeps (reserved; single runs "
                  "ignore it)");
}

// Collects --molecule/--horizon-s/--set into "key=value" override strings.
std::vector<std::string> collect_overrides(const CommonOpts& opts) {
  std::vector<std::string> ov;
  if (!opts.molecule.empty()) ov.push_back("molecule=" + opts.molecule);
  if (opts.horizon_set) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "horizon_s=%.17g", opts.horizon_s);
    ov.emplace_back(buf);
  }
  for (const auto& s : opts.sets) ov.push_back(s);
  return ov;
}

int create_model(const CommonOpts& opts, ModelPtr* out) {
  std::vector<std::string> ov = collect_overrides(opts);
  std::vector<const char*> ptrs;
  ptrs.reserve(ov.size());
  for (const auto& s : ov) ptrs.push_back(s.c_str());
  ccool_model* raw = nullptr;
  int rc = ccool_model_create(opts.config.c_str(),
                              ptrs.empty() ? nullptr : ptrs.data(),
                              static_cast<int>(ptrs.size()), &raw);
  if (rc != CCOOL_OK) {
    std::cerr << "error: " << ccool_last_error(nullptr) << "\n";
    return status_to_exit(rc);
  }
  out->reset(raw);
  return kExitOk;
}

int report_error(const ModelPtr& model, int rc) {
  std::cerr << "error: " << ccool_last_error(model.get()) << "\n";
  return status_to_exit(rc);
}

bool write_file(const std::string& dir, const std::string& name,
                const char* text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create directory " << dir << ": "
              << ec.message() << "\n";
    return false;
  }
  std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    return false;
  }
  std::cerr << "wrote " << path.string() << "\n";
  return true;
}

int cmd_spectrum(const CommonOpts& opts) {
  ModelPtr model;
  if (int rc = create_model(opts, &model); rc != kExitOk) return rc;
  Buf csv, summary;
  {
    char* p = nullptr;
    int rc = ccool_spectrum_csv(model.get(), &p);
    if (rc != CCOOL_OK) return report_error(model, rc);
    csv.reset(p);
  }
  {
    char* p = nullptr;
    int rc = ccool_spectrum_summary_json(model.get(), &p);
    if (rc != CCOOL_OK) return report_error(model, rc);
    summary.reset(p);
  }
  if (opts.out_dir.empty()) {
    std::cout << csv.get();
    std::cerr << summary.get() << "\n";
    return kExitOk;
  }
  if (!write_file(opts.out_dir, "spectrum.csv", csv.get()) ||
      !write_file(opts.out_dir, "spectrum_summary.json", summary.get())) {
    return kExitConfig;
  }
  std::cout << summary.get() << "\n";
  return kExitOk;
}

int cmd_schedule(const CommonOpts& opts) {
  ModelPtr model;
  if (int rc = create_model(opts, &model); rc != kExitOk) return rc;
  Buf csv;
  {
    char* p = nullptr;
    int rc = ccool_auto_schedule_csv(model.get(), &p);
    if (rc != CCOOL_OK) return report_error(model, rc);
    csv.reset(p);
  }
  if (opts.out_dir.empty()) {
    std::cout << csv.get();
    return kExitOk;
  }
  if (!write_file(opts.out_dir, "schedule.csv", csv.get())) return kExitConfig;
  return kExitOk;
}

int cmd_run(const CommonOpts& opts) {
  ModelPtr model;
  if (int rc = create_model(opts, &model); rc != kExitOk) return rc;
  Buf series, summary;
  {
    char* ts = nullptr;
    char* sm = nullptr;
    int rc = ccool_run_auto(model.get(), &ts, &sm);
    if (rc != CCOOL_OK) return report_error(model, rc);
    series.reset(ts);
    summary.reset(sm);
  }
  if (opts.out_dir.empty()) {
    std::cout << summary.get() << "\n";
    return kExitOk;
  }
  if (!write_file(opts.out_dir, "timeseries.csv", series.get()) ||
      !write_file(opts.out_dir, "summary.json", summary.get())) {
    return kExitConfig;
  }
  std::cout << summary.get() << "\n";
  return kExitOk;
}

int cmd_check(const CommonOpts& opts) {
  ModelPtr model;
  if (int rc = create_model(opts, &model); rc != kExitOk) return rc;
  char* p = nullptr;
  int rc = ccool_check_json(model.get(), &p);
  Buf json(p);
  if (json) {
    if (!opts.out_dir.empty() &&
        !write_file(opts.out_dir, "check.json", json.get())) {
      return kExitConfig;
    }
    std::cout << json.get() << "\n";
  }
  if (rc == CCOOL_EREGIME) {
    std::cerr << "error: " << ccool_last_error(model.get()) << "\n";
    return kExitRegime;
  }
  if (rc != CCOOL_OK) return report_error(model, rc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cavicool: cavity-enhanced Raman cooling of trapped molecules "
      "(rotational-state pumping plus resonator-assisted translational "
      "cooling)"};
  app.set_version_flag("--version", std::string("cavicool ") + ccool_version());
  app.require_subcommand(1);

  CommonOpts spectrum_opts, schedule_opts, run_opts, check_opts;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Fold all Raman lines onto one comb spacing and tabulate");
  add_common(spectrum, &spectrum_opts);
  CLI::App* schedule = app.add_subcommand(
      "schedule", "Search a greedy laser schedule for rotational cooling");
  add_common(schedule, &schedule_opts);
  CLI::App* run = app.add_subcommand(
      "run", "Integrate populations and translational energy over a schedule");
  add_common(run, &run_opts);
  CLI::App* check = app.add_subcommand(
      "check", "Verify operating-regime requirements and calibration");
  add_common(check, &check_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (spectrum->parsed()) return cmd_spectrum(spectrum_opts);
  if (schedule->parsed()) return cmd_schedule(schedule_opts);
  if (run->parsed()) return cmd_run(run_opts);
  if (check->parsed()) return cmd_check(check_opts);
  return kExitConfig;
}
