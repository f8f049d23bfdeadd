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

/* Exercises the C interface from plain C. argv[1]: two-UE scenario file. */

#include "rdars/rdars.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                          \
    do {                                                                      \
        if (!(cond)) {                                                        \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                       \
        }                                                                     \
    } while (0)

#define EXPECT_OK(call)                                                                           \
    do {                                                                                          \
        rdars_status s_ = (call);                                                                 \
        if (s_ != RDARS_OK) {                                                                     \
            fprintf(stderr, "%s:%d: %s -> %s (%s)\n", __FILE__, __LINE__, #call, rdars_status_name(s_), \
                    rdars_last_error());                                                          \
            ++failures;                                                                           \
        }                                                                                         \
    } while (0)

static void count_checks(const char* name, int passed, const char* detail, void* user)
{
    (void)name;
    (void)detail;
    if (passed) ++*(int*)user;
}

static rdars_scenario* small_scenario(int n_ues)
{
    rdars_scenario* sc = NULL;
    char k[16];
    EXPECT_OK(rdars_scenario_parse("n_tx = 8\nn_elems = 32\nn_connected = 4\nue_radius = 10\n", &sc));
    snprintf(k, sizeof k, "%d", n_ues);
    EXPECT_OK(rdars_scenario_set(sc, "n_ues", k));
    return sc;
}

static void test_basics(void)
{
    double kappa = 0.0;
    size_t n = 0;
    int buf[8];

    EXPECT(strcmp(rdars_version(), "1.0.0") == 0);
    EXPECT(strcmp(rdars_status_name(RDARS_OK), "ok") == 0);
    EXPECT(strcmp(rdars_status_name(RDARS_ERR_IO), "i/o error") == 0);

    EXPECT_OK(rdars_path_gain(10.0, 20.0, 2.0, &kappa));
    EXPECT(fabs(kappa - 0.01) < 1e-15);
    EXPECT(rdars_path_gain(0.0, 20.0, 2.0, &kappa) == RDARS_ERR_DOMAIN);
    EXPECT(strlen(rdars_last_error()) > 0);
    EXPECT(rdars_path_gain(1.0, 0.0, 2.0, NULL) == RDARS_ERR_INVALID_ARGUMENT);

    EXPECT_OK(rdars_feasible_sparsities(128, 20, NULL, 0, &n));
    EXPECT(n == 6);
    EXPECT(rdars_feasible_sparsities(128, 20, buf, 3, &n) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_feasible_sparsities(128, 20, buf, 8, &n));
    EXPECT(buf[0] == 1 && buf[5] == 6);
    EXPECT(rdars_feasible_sparsities(4, 8, buf, 8, &n) == RDARS_ERR_INVALID_ARGUMENT);

    EXPECT(strcmp(rdars_algorithm_name(RDARS_ALGO_TWO_UE_PROP1), "TWO_UE_PROP1") == 0);
    EXPECT(strcmp(rdars_algorithm_name((rdars_algorithm)42), "?") == 0);
}

static void test_scenarios(const char* path)
{
    rdars_scenario* sc = NULL;
    rdars_scenario* back = NULL;
    size_t needed = 0;
    char* text;
    char tiny[4];

    EXPECT(rdars_scenario_create_default(NULL) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_scenario_create_default(&sc));
    EXPECT(rdars_scenario_set(sc, "no_such_key", "1") != RDARS_OK);
    EXPECT(rdars_scenario_set(sc, "n_tx", "many") == RDARS_ERR_PARSE);
    EXPECT(rdars_scenario_set(NULL, "n_tx", "4") == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_scenario_set(sc, "total_power", "20 dBm"));

    EXPECT_OK(rdars_scenario_format(sc, NULL, 0, &needed));
    EXPECT(needed > 10);
    EXPECT(rdars_scenario_format(sc, tiny, sizeof tiny, NULL) == RDARS_ERR_INVALID_ARGUMENT);
    text = (char*)malloc(needed);
    EXPECT_OK(rdars_scenario_format(sc, text, needed, NULL));
    EXPECT(strlen(text) + 1 == needed);
    EXPECT_OK(rdars_scenario_parse(text, &back));
    free(text);
    rdars_scenario_destroy(back);
    rdars_scenario_destroy(sc);

    sc = NULL;
    EXPECT(rdars_scenario_load("/nonexistent/scenario.cfg", &sc) == RDARS_ERR_IO);
    EXPECT(sc == NULL);
    EXPECT(rdars_scenario_parse("n_tx = \n", &sc) == RDARS_ERR_PARSE);
    if (path) {
        EXPECT_OK(rdars_scenario_load(path, &sc));
        rdars_scenario_destroy(sc);
    }
    rdars_scenario_destroy(NULL);
}

static void test_solvers(const char* path)
{
    rdars_scenario* one = small_scenario(1);
    rdars_scenario* two = NULL;
    rdars_solve_report rep;
    double rate = 0.0, bound = 0.0, eps = -1.0, ratio = 0.0;
    rdars_two_ue_case label;
    size_t n = 0;
    int etas[64];

    /* solvers need fixed UE positions */
    EXPECT(rdars_wa_solve(one, 0, &rep) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_scenario_set(one, "ue_pos", "97, 4, 1.5"));
    EXPECT_OK(rdars_single_ue_closed(one, 1, &rate, &bound));
    EXPECT(rate > 0.0 && fabs(rate - log2(1.0 + bound)) < 1e-9 * rate);
    EXPECT_OK(rdars_wa_solve(one, 0, &rep));
    EXPECT(rep.eta >= 1 && rep.converged == 1);
    EXPECT(rep.sum_rate >= log2(1.0 + 0.999 * bound));
    EXPECT(fabs(rep.min_ue_rate - rep.sum_rate) < 1e-12);
    EXPECT(rep.power <= 1.0 * (1.0 + 1e-6));
    EXPECT_OK(rdars_wa_solve(one, 3, &rep));
    EXPECT(rep.eta == 3);
    EXPECT(rdars_wa_solve(one, 99, &rep) != RDARS_OK);
    EXPECT(rdars_wa_solve(one, -1, &rep) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT(rdars_two_ue_cscc(one, 1, &eps) == RDARS_ERR_INVALID_ARGUMENT);
    rdars_scenario_destroy(one);

    if (!path) return;
    EXPECT_OK(rdars_scenario_load(path, &two));
    EXPECT(rdars_single_ue_closed(two, 1, &rate, &bound) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_two_ue_select(two, &label, NULL, 0, &n, &ratio));
    EXPECT(n >= 1 && n <= 64);
    EXPECT(ratio > 0.0);
    EXPECT_OK(rdars_two_ue_select(two, &label, etas, 64, &n, NULL));
    EXPECT(label >= RDARS_CASE_SUBCASE1 && label <= RDARS_CASE_CASE3);
    EXPECT(etas[0] >= 1);
    EXPECT_OK(rdars_two_ue_cscc(two, etas[0], &eps));
    EXPECT(eps >= 0.0 && eps <= 1.0 + 1e-12);
    EXPECT_OK(rdars_analyze_two_ue(two, 1, "capi_eta_sweep.csv"));
    EXPECT(rdars_analyze_two_ue(two, 1, "/nonexistent/dir/x.csv") == RDARS_ERR_IO);
    EXPECT(rdars_analyze_two_ue(NULL, 1, "x.csv") == RDARS_ERR_INVALID_ARGUMENT);
    rdars_scenario_destroy(two);
}

static void test_campaign(void)
{
    rdars_scenario* sc = small_scenario(2);
    rdars_campaign* c = NULL;
    rdars_result* r = NULL;
    rdars_row row;
    rdars_summary s;
    size_t i;
    FILE* f;
    char line[256];

    EXPECT_OK(rdars_campaign_create(sc, &c));
    rdars_scenario_destroy(sc); /* the campaign keeps its own copy */
    EXPECT(rdars_campaign_set_trials(c, 0) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_campaign_set_trials(c, 3));
    EXPECT_OK(rdars_campaign_set_seed(c, 77));
    EXPECT(rdars_campaign_set_algorithms(c, "COMPACT_ETA1,BOGUS") == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_campaign_set_algorithms(c, "COMPACT_ETA1,TWO_UE_PROP1"));
    EXPECT(rdars_campaign_set_sweep(c, "ptot_dbm=1:0:1") == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_campaign_set_sweep(c, "ptot_dbm=20:30:10"));
    EXPECT(rdars_campaign_set_threads(c, 0) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rdars_campaign_set_threads(c, 2));
    EXPECT_OK(rdars_campaign_run(c, &r));

    EXPECT(rdars_result_row_count(r) == 12);
    EXPECT(rdars_result_row_count(NULL) == 0);
    for (i = 0; i < rdars_result_row_count(r); ++i) {
        EXPECT_OK(rdars_result_get_row(r, i, &row));
        EXPECT(strcmp(row.status, "ok") == 0 || strcmp(row.status, "not_converged") == 0);
        EXPECT(row.sum_rate > 0.0 && row.min_ue_rate <= row.sum_rate);
    }
    EXPECT(rdars_result_get_row(r, 12, &row) == RDARS_ERR_INVALID_ARGUMENT);
    EXPECT(rdars_result_summary_count(r) == 4);
    EXPECT_OK(rdars_result_get_summary(r, 0, &s));
    EXPECT(s.n_ok == 3 && s.n_failed == 0 && s.sweep_value == 20.0);
    EXPECT(s.algorithm == RDARS_ALGO_COMPACT_ETA1);
    EXPECT(rdars_result_get_summary(r, 4, &s) == RDARS_ERR_INVALID_ARGUMENT);

    EXPECT_OK(rdars_result_write_csv(r, "capi_campaign.csv", 0));
    f = fopen("capi_campaign.csv", "r");
    EXPECT(f != NULL);
    if (f) {
        int lines = 0;
        while (fgets(line, sizeof line, f)) ++lines;
        fclose(f);
        EXPECT(lines == 13);
    }
    EXPECT(rdars_result_write_csv(r, "/nonexistent/dir/out.csv", 1) == RDARS_ERR_IO);

    EXPECT_OK(rdars_campaign_set_sweep(c, NULL));
    EXPECT_OK(rdars_campaign_set_trials(c, 1));
    rdars_result_destroy(r);
    r = NULL;
    EXPECT_OK(rdars_campaign_run(c, &r));
    EXPECT(rdars_result_row_count(r) == 2);
    EXPECT_OK(rdars_result_get_row(r, 0, &row));
    EXPECT(fabs(row.sweep_value - 30.0) < 1e-9);
    rdars_result_destroy(r);
    rdars_campaign_destroy(c);
    EXPECT(rdars_campaign_run(NULL, &r) == RDARS_ERR_INVALID_ARGUMENT);
}

static void test_validate(void)
{
    int passed = 0, failed = -1;
    EXPECT_OK(rdars_validate(2, count_checks, &passed, &failed));
    EXPECT(failed == 0);
    EXPECT(passed > 0);
}

int main(int argc, char** argv)
{
    const char* path = argc > 1 ? argv[1] : NULL;
    test_basics();
    test_scenarios(path);
    test_solvers(path);
    test_campaign();
    test_validate();
    if (failures) {
        fprintf(stderr, "%d expectation(s) failed\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
