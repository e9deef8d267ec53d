#include <doctest.h>

#include <cstring>
#include <string>

#include "cavicool.h"

namespace {

const char* kRunCfg = CAVICOOL_DATA_DIR "/run.cfg";

struct Handle {
  ccool_model* m = nullptr;
  ~Handle() { ccool_model_destroy(m); }
};

}  // namespace

TEST_CASE("version string is a dotted triple") {
  const char* v = ccool_version();
  REQUIRE(v != nullptr);
  int dots = 0;
  for (const char* p = v; *p; ++p) dots += (*p == '.');
  CHECK(dots == 2);
}

TEST_CASE("creation failures set the thread error and no handle") {
  ccool_model* m = reinterpret_cast<ccool_model*>(0x1);
  int rc = ccool_model_create("/does/not/exist.cfg", nullptr, 0, &m);
  CHECK(rc == CCOOL_ECONFIG);
  CHECK(m == nullptr);
  CHECK(std::strlen(ccool_last_error(nullptr)) > 0);

  const char* bad_override[] = {"no_such_key=1"};
  rc = ccool_model_create(kRunCfg, bad_override, 1, &m);
  CHECK(rc == CCOOL_ECONFIG);
  CHECK(m == nullptr);

  const char* malformed[] = {"jmax"};
  rc = ccool_model_create(kRunCfg, malformed, 1, &m);
  CHECK(rc == CCOOL_ECONFIG);

  CHECK(ccool_model_create(nullptr, nullptr, 0, &m) == CCOOL_EINVAL);
  CHECK(ccool_model_create(kRunCfg, nullptr, 2, &m) == CCOOL_EINVAL);
  CHECK(ccool_model_create(kRunCfg, nullptr, 0, nullptr) == CCOOL_EINVAL);
}

TEST_CASE("null argument checks") {
  Handle h;
  REQUIRE(ccool_model_create(kRunCfg, nullptr, 0, &h.m) == CCOOL_OK);
  char* out = nullptr;
  CHECK(ccool_spectrum_csv(nullptr, &out) == CCOOL_EINVAL);
  CHECK(ccool_spectrum_csv(h.m, nullptr) == CCOOL_EINVAL);
  CHECK(ccool_run_schedule_csv(h.m, nullptr, &out, nullptr) == CCOOL_EINVAL);
  CHECK(ccool_check_json(h.m, nullptr) == CCOOL_EINVAL);
  ccool_free(nullptr);           // no-op
  ccool_model_destroy(nullptr);  // no-op
}

TEST_CASE("spectrum outputs carry the expected shape") {
  Handle h;
  REQUIRE(ccool_model_create(kRunCfg, nullptr, 0, &h.m) == CCOOL_OK);
  char* csv = nullptr;
  REQUIRE(ccool_spectrum_csv(h.m, &csv) == CCOOL_OK);
  std::string s(csv);
  ccool_free(csv);
  CHECK(s.rfind("line_id,Ji,Jf,kind,shift_hz,folded_hz,comb_order,strength",
                0) == 0);
  // Header plus 23 lines for J <= 8, v = 0.
  int rows = 0;
  for (char c : s) rows += (c == '\n');
  CHECK(rows == 24);

  char* json = nullptr;
  REQUIRE(ccool_spectrum_summary_json(h.m, &json) == CCOOL_OK);
  std::string j(json);
  ccool_free(json);
  CHECK(j.find("\"anti_stokes_count\": 7") != std::string::npos);
}

TEST_CASE("auto run and an exported schedule run bit-identically") {
  Handle h;
  REQUIRE(ccool_model_create(kRunCfg, nullptr, 0, &h.m) == CCOOL_OK);
  char* sched = nullptr;
  REQUIRE(ccool_auto_schedule_csv(h.m, &sched) == CCOOL_OK);

  char* ts_auto = nullptr;
  char* sum_auto = nullptr;
  REQUIRE(ccool_run_auto(h.m, &ts_auto, &sum_auto) == CCOOL_OK);
  char* ts_file = nullptr;
  REQUIRE(ccool_run_schedule_csv(h.m, sched, &ts_file, nullptr) == CCOOL_OK);

  CHECK(std::strcmp(ts_auto, ts_file) == 0);
  CHECK(std::string(sum_auto).find("\"ground_population\"") !=
        std::string::npos);
  ccool_free(sched);
  ccool_free(ts_auto);
  ccool_free(sum_auto);
  ccool_free(ts_file);
}

TEST_CASE("schedule text errors surface as config errors on the handle") {
  Handle h;
  REQUIRE(ccool_model_create(kRunCfg, nullptr, 0, &h.m) == CCOOL_OK);
  char* ts = nullptr;
  int rc = ccool_run_schedule_csv(h.m, "garbage\n", &ts, nullptr);
  CHECK(rc == CCOOL_ECONFIG);
  CHECK(ts == nullptr);
  CHECK(std::strlen(ccool_last_error(h.m)) > 0);
  // The handle stays usable after a failure.
  char* csv = nullptr;
  CHECK(ccool_spectrum_csv(h.m, &csv) == CCOOL_OK);
  ccool_free(csv);
}

TEST_CASE("regime check passes shipped config and fails a broad linewidth") {
  Handle good;
  REQUIRE(ccool_model_create(kRunCfg, nullptr, 0, &good.m) == CCOOL_OK);
  char* json = nullptr;
  CHECK(ccool_check_json(good.m, &json) == CCOOL_OK);
  REQUIRE(json != nullptr);
  CHECK(std::string(json).find("\"pass\": true") != std::string::npos);
  ccool_free(json);

  const char* ov[] = {"gamma_eff_hz=1.0e6"};
  Handle bad;
  REQUIRE(ccool_model_create(kRunCfg, ov, 1, &bad.m) == CCOOL_OK);
  json = nullptr;
  CHECK(ccool_check_json(bad.m, &json) == CCOOL_EREGIME);
  REQUIRE(json != nullptr);  // diagnostics still delivered
  CHECK(std::string(json).find("\"pass\": false") != std::string::npos);
  ccool_free(json);
}

TEST_CASE("overrides reach the model") {
  const char* ov[] = {"jmax=4", "horizon_s=0.4"};
  Handle h;
  REQUIRE(ccool_model_create(kRunCfg, ov, 2, &h.m) == CCOOL_OK);
  char* csv = nullptr;
  REQUIRE(ccool_spectrum_csv(h.m, &csv) == CCOOL_OK);
  std::string s(csv);
  ccool_free(csv);
  // J <= 4: 5 elastic + 3 Stokes + 3 anti-Stokes lines.
  int rows = 0;
  for (char c : s) rows += (c == '\n');
  CHECK(rows == 12);
}
