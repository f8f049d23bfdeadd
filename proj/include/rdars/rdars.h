// SPDX-License-Identifier: Apache-2.0
//
// rdars-sparsity: joint sparsity and beamforming design for RDARS-aided downlink
// Copyright (C) 2026 The rdars-sparsity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RDARS_RDARS_H
#define RDARS_RDARS_H

/*
 * C interface to the rdars-sparsity library.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns an rdars_status; on failure a thread-local message is
 * available from rdars_last_error() until the next failing call on the same
 * thread. Handles are not internally synchronised: use one handle per thread
 * or serialise access.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RDARS_BUILDING_LIBRARY)
#    define RDARS_API __declspec(dllexport)
#  else
#    define RDARS_API __declspec(dllimport)
#  endif
#else
#  define RDARS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdars_status {
    RDARS_OK = 0,
    RDARS_ERR_INVALID_ARGUMENT = 1,
    RDARS_ERR_DOMAIN = 2,
    RDARS_ERR_INFEASIBLE = 3,
    RDARS_ERR_IO = 4,
    RDARS_ERR_PARSE = 5,
    RDARS_ERR_NUMERICAL = 6,
    RDARS_ERR_INTERNAL = 7
} rdars_status;

typedef struct rdars_scenario rdars_scenario;
typedef struct rdars_campaign rdars_campaign;
typedef struct rdars_result rdars_result;

typedef enum rdars_algorithm {
    RDARS_ALGO_WA_OPT_ETA = 0,
    RDARS_ALGO_COMPACT_ETA1 = 1,
    RDARS_ALGO_RANDOM_ETA = 2,
    RDARS_ALGO_EXHAUSTIVE_ETA = 3,
    RDARS_ALGO_SINGLE_UE_CLOSED = 4,
    RDARS_ALGO_TWO_UE_PROP1 = 5
} rdars_algorithm;

typedef enum rdars_two_ue_case {
    RDARS_CASE_SUBCASE1 = 0,
    RDARS_CASE_SUBCASE2 = 1,
    RDARS_CASE_CASE2 = 2,
    RDARS_CASE_CASE3 = 3
} rdars_two_ue_case;

RDARS_API const char* rdars_version(void);
RDARS_API const char* rdars_last_error(void);
RDARS_API const char* rdars_status_name(rdars_status s);

/* ---- scenarios ---------------------------------------------------------- */

/* Reference deployment: N_t=32, N=128, a=20, K=20, 30 dBm, 28 GHz. */
RDARS_API rdars_status rdars_scenario_create_default(rdars_scenario** out);
RDARS_API rdars_status rdars_scenario_load(const char* path, rdars_scenario** out);
/* Parses `key = value` text on top of the default scenario. */
RDARS_API rdars_status rdars_scenario_parse(const char* text, rdars_scenario** out);
RDARS_API rdars_status rdars_scenario_set(rdars_scenario* sc, const char* key, const char* value);
/*
 * Writes the scenario in file syntax. `needed` (optional) receives the
 * length including the terminator; the call fails with
 * RDARS_ERR_INVALID_ARGUMENT when `cap` is too small.
 */
RDARS_API rdars_status rdars_scenario_format(const rdars_scenario* sc, char* buf, size_t cap, size_t* needed);
RDARS_API void rdars_scenario_destroy(rdars_scenario* sc);

/* Feasible sparsity levels. Pass buf = NULL to query the count. */
RDARS_API rdars_status rdars_feasible_sparsities(int n_elems, int n_connected, int* buf, size_t cap, size_t* count);
RDARS_API rdars_status rdars_path_gain(double distance, double c0_db, double exponent, double* kappa);

/* ---- solvers on the scenario's fixed UE positions ------------------------ */

typedef struct rdars_solve_report {
    int eta;
    double sum_rate;     /* bits/s/Hz */
    double min_ue_rate;  /* bits/s/Hz */
    double power;        /* trace(V V^H) in watts */
    int iterations;
    int converged;
    double wall_ms;
} rdars_solve_report;

/* WA solver; eta = 0 searches all feasible levels. */
RDARS_API rdars_status rdars_wa_solve(const rdars_scenario* sc, int eta, rdars_solve_report* out);
/* Closed-form single-UE rate and its SNR bound (K must be 1). */
RDARS_API rdars_status rdars_single_ue_closed(const rdars_scenario* sc, int eta, double* rate, double* snr_bound);

/* Two-UE sparsity selection. `etas` may be NULL to query the count. */
RDARS_API rdars_status rdars_two_ue_select(const rdars_scenario* sc, rdars_two_ue_case* label, int* etas,
                                           size_t cap, size_t* count, double* regime_ratio);
/* Squared channel correlation under the midpoint reference beam. */
RDARS_API rdars_status rdars_two_ue_cscc(const rdars_scenario* sc, int eta, double* eps);

/* ---- Monte Carlo campaigns ---------------------------------------------- */

RDARS_API rdars_status rdars_campaign_create(const rdars_scenario* sc, rdars_campaign** out);
RDARS_API rdars_status rdars_campaign_set_trials(rdars_campaign* c, int n_trials);
RDARS_API rdars_status rdars_campaign_set_seed(rdars_campaign* c, uint64_t seed);
/* Comma-separated algorithm names, e.g. "WA_OPT_ETA,COMPACT_ETA1". */
RDARS_API rdars_status rdars_campaign_set_algorithms(rdars_campaign* c, const char* list);
/* "ptot_dbm=a:b:step"; NULL or "" clears the sweep. */
RDARS_API rdars_status rdars_campaign_set_sweep(rdars_campaign* c, const char* spec);
RDARS_API rdars_status rdars_campaign_set_threads(rdars_campaign* c, int threads);
RDARS_API rdars_status rdars_campaign_run(const rdars_campaign* c, rdars_result** out);
RDARS_API void rdars_campaign_destroy(rdars_campaign* c);

typedef struct rdars_row {
    int trial;
    double sweep_value;
    rdars_algorithm algorithm;
    int eta;
    double sum_rate;
    double min_ue_rate;
    int iterations;
    double wall_ms;
    const char* status; /* valid while the result lives */
} rdars_row;

typedef struct rdars_summary {
    double sweep_value;
    rdars_algorithm algorithm;
    int n_ok;
    int n_failed;
    double mean_sum_rate;
    double std_sum_rate;
    double mean_min_ue_rate;
    double mean_wall_ms;
} rdars_summary;

RDARS_API size_t rdars_result_row_count(const rdars_result* r);
RDARS_API rdars_status rdars_result_get_row(const rdars_result* r, size_t i, rdars_row* out);
RDARS_API size_t rdars_result_summary_count(const rdars_result* r);
RDARS_API rdars_status rdars_result_get_summary(const rdars_result* r, size_t i, rdars_summary* out);
RDARS_API rdars_status rdars_result_write_csv(const rdars_result* r, const char* path, int include_timing);
RDARS_API void rdars_result_destroy(rdars_result* r);
RDARS_API const char* rdars_algorithm_name(rdars_algorithm a);

/* ---- analysis and self-checks ------------------------------------------- */

/*
 * Per-eta correlation table for two UEs, written as CSV. Uses the scenario's
 * UE positions when it lists exactly two, otherwise drops two UEs in the
 * scenario's disk with `seed`.
 */
RDARS_API rdars_status rdars_analyze_two_ue(const rdars_scenario* sc, uint64_t seed, const char* path);

typedef void (*rdars_check_callback)(const char* name, int passed, const char* detail, void* user);

/* Runs the invariant suite, reporting each check through `cb` (may be NULL). */
RDARS_API rdars_status rdars_validate(uint64_t seed, rdars_check_callback cb, void* user, int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* RDARS_RDARS_H */
