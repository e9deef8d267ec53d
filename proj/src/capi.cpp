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

#include "cavicool.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "model.hpp"

namespace {

constexpr const char kVersion[] = "1.0.0";

thread_local std::string g_create_error;

char* dup_cstring(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) return nullptr;
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

struct ccool_model {
  cavicool::Model model;
  std::string last_error;
};

namespace {

void set_error(ccool_model* m, const std::string& msg) {
  if (m != nullptr) {
    m->last_error = msg;
  } else {
    g_create_error = msg;
  }
}

// Runs `fn`, translating exceptions into status codes and recording the
// message on the handle (or the thread-local slot when `m` is NULL).
template <typename Fn>
int guarded(ccool_model* m, Fn&& fn) {
  try {
    return fn();
  } catch (const cavicool::ConfigError& e) {
    set_error(m, e.what());
    return CCOOL_ECONFIG;
  } catch (const cavicool::InvariantError& e) {
    set_error(m, e.what());
    return CCOOL_EINVARIANT;
  } catch (const std::invalid_argument& e) {
    set_error(m, e.what());
    return CCOOL_EINVAL;
  } catch (const std::bad_alloc&) {
    set_error(m, "out of memory");
    return CCOOL_EINVAL;
  } catch (const std::exception& e) {
    set_error(m, e.what());
    return CCOOL_EINVAL;
  }
}

// Copies `text` into a malloc'd buffer at *out; reports failure on `m`.
int store_string(ccool_model* m, const std::string& text, char** out) {
  if (out == nullptr) return CCOOL_OK;
  *out = dup_cstring(text);
  if (*out == nullptr) {
    set_error(m, "out of memory");
    return CCOOL_EINVAL;
  }
  return CCOOL_OK;
}

}  // namespace

extern "C" {

const char* ccool_version(void) { return kVersion; }

int ccool_model_create(const char* run_config_path,
                       const char* const* overrides, int n_overrides,
                       ccool_model** out) {
  if (out == nullptr) return CCOOL_EINVAL;
  *out = nullptr;
  if (run_config_path == nullptr) {
    g_create_error = "run_config_path is NULL";
    return CCOOL_EINVAL;
  }
  if (n_overrides < 0 || (n_overrides > 0 && overrides == nullptr)) {
    g_create_error = "override array is inconsistent with n_overrides";
    return CCOOL_EINVAL;
  }
  return guarded(nullptr, [&]() -> int {
    std::vector<std::string> raw;
    raw.reserve(static_cast<std::size_t>(n_overrides));
    for (int i = 0; i < n_overrides; ++i) {
      if (overrides[i] == nullptr) {
        throw std::invalid_argument("override " + std::to_string(i) +
                                    " is NULL");
      }
      raw.emplace_back(overrides[i]);
    }
    cavicool::Overrides parsed = cavicool::parse_overrides(raw);
    auto* handle = new ccool_model{
        cavicool::Model::create(run_config_path, parsed), std::string()};
    *out = handle;
    return CCOOL_OK;
  });
}

void ccool_model_destroy(ccool_model* model) { delete model; }

const char* ccool_last_error(const ccool_model* model) {
  if (model != nullptr) return model->last_error.c_str();
  return g_create_error.c_str();
}

int ccool_spectrum_csv(ccool_model* model, char** out_csv) {
  if (model == nullptr || out_csv == nullptr) return CCOOL_EINVAL;
  *out_csv = nullptr;
  return guarded(model, [&]() -> int {
    return store_string(model, model->model.spectrum_csv(), out_csv);
  });
}

int ccool_spectrum_summary_json(ccool_model* model, char** out_json) {
  if (model == nullptr || out_json == nullptr) return CCOOL_EINVAL;
  *out_json = nullptr;
  return guarded(model, [&]() -> int {
    return store_string(model, model->model.spectrum_summary_json(), out_json);
  });
}

int ccool_auto_schedule_csv(ccool_model* model, char** out_csv) {
  if (model == nullptr || out_csv == nullptr) return CCOOL_EINVAL;
  *out_csv = nullptr;
  return guarded(model, [&]() -> int {
    cavicool::Schedule sched = model->model.auto_schedule();
    std::string csv = cavicool::write_schedule_csv(sched);
    return store_string(model, csv, out_csv);
  });
}

namespace {

int run_and_store(ccool_model* model, const cavicool::Schedule& sched,
                  char** out_timeseries_csv, char** out_summary_json) {
  cavicool::Model::RunOutput out = model->model.run(sched);
  int rc = store_string(model, out.timeseries_csv, out_timeseries_csv);
  if (rc != CCOOL_OK) return rc;
  rc = store_string(model, out.summary_json, out_summary_json);
  if (rc != CCOOL_OK && out_timeseries_csv != nullptr) {
    ccool_free(*out_timeseries_csv);
    *out_timeseries_csv = nullptr;
  }
  return rc;
}

}  // namespace

int ccool_run_auto(ccool_model* model, char** out_timeseries_csv,
                   char** out_summary_json) {
  if (model == nullptr) return CCOOL_EINVAL;
  if (out_timeseries_csv != nullptr) *out_timeseries_csv = nullptr;
  if (out_summary_json != nullptr) *out_summary_json = nullptr;
  return guarded(model, [&]() -> int {
    cavicool::Schedule sched = model->model.resolve_schedule();
    return run_and_store(model, sched, out_timeseries_csv, out_summary_json);
  });
}

int ccool_run_schedule_csv(ccool_model* model, const char* schedule_csv,
                           char** out_timeseries_csv,
                           char** out_summary_json) {
  if (model == nullptr || schedule_csv == nullptr) return CCOOL_EINVAL;
  if (out_timeseries_csv != nullptr) *out_timeseries_csv = nullptr;
  if (out_summary_json != nullptr) *out_summary_json = nullptr;
  return guarded(model, [&]() -> int {
    cavicool::Schedule sched = cavicool::parse_schedule_csv(schedule_csv);
    return run_and_store(model, sched, out_timeseries_csv, out_summary_json);
  });
}

int ccool_check_json(ccool_model* model, char** out_json) {
  if (model == nullptr || out_json == nullptr) return CCOOL_EINVAL;
  *out_json = nullptr;
  return guarded(model, [&]() -> int {
    bool pass = false;
    std::string json = model->model.check_json(&pass);
    int rc = store_string(model, json, out_json);
    if (rc != CCOOL_OK) return rc;
    if (!pass) {
      set_error(model, "operating-regime check failed");
      return CCOOL_EREGIME;
    }
    return CCOOL_OK;
  });
}

void ccool_free(char* buf) { std::free(buf); }

}  // extern "C"
