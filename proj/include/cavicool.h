/* Copyright 2026 The cavicool Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* cavicool C API.
 *
 * Stable C interface to the cavity-enhanced Raman cooling simulator.  A
 * model handle owns one fully-loaded configuration (molecule, resonator,
 * run parameters) with the rate scale already calibrated.  All functions
 * return one of the CCOOL_* status codes; string outputs are heap
 * allocations owned by the caller and released with ccool_free().
 *
 * Thread safety: distinct handles may be used concurrently.  A single
 * handle must not be shared between threads without external locking
 * (error state is per-handle).
 */

#ifndef CAVICOOL_H_
#define CAVICOOL_H_

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  The command-line front end maps these onto its exit
 * codes: 0 success, 2 configuration error, 3 invariant trip, 4 regime
 * check failed.  CCOOL_EINVAL marks API misuse (null pointers etc.). */
enum ccool_status {
  CCOOL_OK = 0,
  CCOOL_EINVAL = 1,
  CCOOL_ECONFIG = 2,
  CCOOL_EINVARIANT = 3,
  CCOOL_EREGIME = 4
};

/* Opaque simulator handle. */
typedef struct ccool_model ccool_model;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* ccool_version(void);

/* Creates a model from a run-configuration file.  `overrides` is an
 * array of `n_overrides` strings of the form "key=value" applied on top
 * of file contents (keys are routed to the run, molecule, or cavity
 * layer by name).  On success stores the new handle in *out and returns
 * CCOOL_OK.  On failure *out is set to NULL and the message is
 * retrievable via ccool_last_error(NULL) on the same thread. */
int ccool_model_create(const char* run_config_path,
                       const char* const* overrides, int n_overrides,
                       ccool_model** out);

/* Releases a handle (NULL is a no-op). */
void ccool_model_destroy(ccool_model* model);

/* Message for the most recent failure.  With a non-NULL model, returns
 * that handle's last error; with NULL, the calling thread's creation
 * error.  Returns "" when no failure has been recorded.  The pointer is
 * valid until the next failing call on the same handle (or thread); do
 * not free. */
const char* ccool_last_error(const ccool_model* model);

/* Folded Raman spectrum as CSV
 * (line_id,Ji,Jf,kind,shift_hz,folded_hz,comb_order,strength). */
int ccool_spectrum_csv(ccool_model* model, char** out_csv);

/* JSON summary of the folded spectrum (line counts, spectral span,
 * comb-order range). */
int ccool_spectrum_summary_json(ccool_model* model, char** out_json);

/* Greedy cooling schedule from the configured initial state, as CSV
 * (t_start_s,duration_s,laser_hz,finetune_hz,lines). */
int ccool_auto_schedule_csv(ccool_model* model, char** out_csv);

/* Runs the configured schedule source ("auto" or a schedule CSV path
 * from the run configuration).  Outputs: the sampled time series as CSV
 * and a run summary as JSON.  Either output pointer may be NULL if that
 * output is not wanted. */
int ccool_run_auto(ccool_model* model, char** out_timeseries_csv,
                   char** out_summary_json);

/* Runs a schedule provided as CSV text (same columns as produced by
 * ccool_auto_schedule_csv). */
int ccool_run_schedule_csv(ccool_model* model, const char* schedule_csv,
                           char** out_timeseries_csv,
                           char** out_summary_json);

/* Operating-regime diagnostics as JSON.  Returns CCOOL_OK when every
 * regime requirement holds and CCOOL_EREGIME when any fails; *out_json
 * is populated in both cases. */
int ccool_check_json(ccool_model* model, char** out_json);

/* Frees a string returned by this API (NULL is a no-op). */
void ccool_free(char* buf);

#ifdef __cplusplus
}
#endif

#endif /* CAVICOOL_H_ */
