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

#include "rdars/rdars.h"

#include "rdars/closed_form.hpp"
#include "rdars/error.hpp"
#include "rdars/harness.hpp"
#include "rdars/validation.hpp"
#include "rdars/wmmse.hpp"

#include <chrono>
#include <cstring>
#include <new>
#include <string>

struct rdars_scenario {
    rdars::Scenario value;
};

struct rdars_campaign {
    rdars::Campaign value;
};

struct rdars_result {
    rdars::ResultTable table;
    std::vector<rdars::CellSummary> summary;
};

namespace {

thread_local std::string g_last_error;

rdars_status to_status(rdars::ErrorCode c)
{
    switch (c) {
    case rdars::ErrorCode::InvalidArgument: return RDARS_ERR_INVALID_ARGUMENT;
    case rdars::ErrorCode::Domain: return RDARS_ERR_DOMAIN;
    case rdars::ErrorCode::Infeasible: return RDARS_ERR_INFEASIBLE;
    case rdars::ErrorCode::Io: return RDARS_ERR_IO;
    case rdars::ErrorCode::Parse: return RDARS_ERR_PARSE;
    case rdars::ErrorCode::Numerical: return RDARS_ERR_NUMERICAL;
    case rdars::ErrorCode::Internal: return RDARS_ERR_INTERNAL;
    }
    return RDARS_ERR_INTERNAL;
}

rdars_status set_error(rdars_status s, const std::string& msg)
{
    g_last_error = msg;
    return s;
}

// Runs `fn`, translating exceptions into status codes.
template <class F>
rdars_status guard(F&& fn)
{
    try {
        fn();
        return RDARS_OK;
    } catch (const rdars::Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(RDARS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(RDARS_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(RDARS_ERR_INTERNAL, "unknown error");
    }
}

void need(const void* p, const char* what)
{
    rdars::require(p != nullptr, rdars::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

void copy_ints(const std::vector<int>& v, int* buf, size_t cap, size_t* count)
{
    if (count) *count = v.size();
    if (!buf) return;
    rdars::require(cap >= v.size(), rdars::ErrorCode::InvalidArgument, "output buffer too small");
    std::copy(v.begin(), v.end(), buf);
}

}  // namespace

extern "C" {

const char* rdars_version(void) { return "1.0.0"; }

const char* rdars_last_error(void) { return g_last_error.c_str(); }

const char* rdars_status_name(rdars_status s)
{
    switch (s) {
    case RDARS_OK: return "ok";
    case RDARS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RDARS_ERR_DOMAIN: return "domain error";
    case RDARS_ERR_INFEASIBLE: return "infeasible";
    case RDARS_ERR_IO: return "i/o error";
    case RDARS_ERR_PARSE: return "parse error";
    case RDARS_ERR_NUMERICAL: return "numerical error";
    case RDARS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

// ---- scenarios -------------------------------------------------------------

rdars_status rdars_scenario_create_default(rdars_scenario** out)
{
    return guard([&] {
        need(out, "out");
        *out = new rdars_scenario{rdars::default_scenario()};
    });
}

rdars_status rdars_scenario_load(const char* path, rdars_scenario** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new rdars_scenario{rdars::load_scenario(path)};
    });
}

rdars_status rdars_scenario_parse(const char* text, rdars_scenario** out)
{
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = new rdars_scenario{rdars::parse_scenario(text)};
    });
}

rdars_status rdars_scenario_set(rdars_scenario* sc, const char* key, const char* value)
{
    return guard([&] {
        need(sc, "scenario");
        need(key, "key");
        need(value, "value");
        rdars::set_scenario_value(sc->value, key, value);
    });
}

rdars_status rdars_scenario_format(const rdars_scenario* sc, char* buf, size_t cap, size_t* needed)
{
    return guard([&] {
        need(sc, "scenario");
        const std::string text = rdars::format_scenario(sc->value);
        if (needed) *needed = text.size() + 1;
        if (!buf) return;
        rdars::require(cap > text.size(), rdars::ErrorCode::InvalidArgument, "output buffer too small");
        std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

void rdars_scenario_destroy(rdars_scenario* sc) { delete sc; }

rdars_status rdars_feasible_sparsities(int n_elems, int n_connected, int* buf, size_t cap, size_t* count)
{
    return guard([&] {
        rdars::require(n_elems >= 1 && n_connected >= 1 && n_connected <= n_elems,
                       rdars::ErrorCode::InvalidArgument, "need 1 <= n_connected <= n_elems");
        copy_ints(rdars::feasible_sparsities(n_elems, n_connected), buf, cap, count);
    });
}

rdars_status rdars_path_gain(double distance, double c0_db, double exponent, double* kappa)
{
    return guard([&] {
        need(kappa, "kappa");
        *kappa = rdars::path_gain(distance, c0_db, exponent);
    });
}

// ---- solvers ---------------------------------------------------------------

rdars_status rdars_wa_solve(const rdars_scenario* sc, int eta, rdars_solve_report* out)
{
    return guard([&] {
        need(sc, "scenario");
        need(out, "out");
        rdars::require(eta >= 0, rdars::ErrorCode::InvalidArgument, "eta must be >= 0");
        const rdars::Geometry geo = rdars::scenario_geometry(sc->value);
        const auto t0 = std::chrono::steady_clock::now();
        const rdars::WaResult r = eta == 0 ? rdars::wa_solve(geo, sc->value.config)
                                           : rdars::wa_solve_fixed(geo, sc->value.config, eta);
        out->eta = r.mode.eta;
        out->sum_rate = r.report.sum_rate;
        out->min_ue_rate = r.report.min_rate();
        out->power = r.solution.power();
        out->iterations = r.report.iterations;
        out->converged = r.converged ? 1 : 0;
        out->wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
}

rdars_status rdars_single_ue_closed(const rdars_scenario* sc, int eta, double* rate, double* snr_bound)
{
    return guard([&] {
        need(sc, "scenario");
        const rdars::SystemConfig& cfg = sc->value.config;
        const rdars::Geometry geo = rdars::scenario_geometry(sc->value);
        rdars::require(geo.n_ues() == 1, rdars::ErrorCode::InvalidArgument, "single-UE solution needs K = 1");
        const rdars::ModeSelection mode = rdars::make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0);
        const rdars::BeamformingSolution s = rdars::single_ue_solution(geo, cfg, mode).as_solution();
        const rdars::CMat H = rdars::effective_channels(rdars::los_channels(geo, cfg), s.passive, mode);
        if (rate) *rate = rdars::sum_rate(H, s.V, cfg.noise_power).sum_rate;
        if (snr_bound) *snr_bound = rdars::single_ue_snr_bound(geo, cfg);
    });
}

rdars_status rdars_two_ue_select(const rdars_scenario* sc, rdars_two_ue_case* label, int* etas, size_t cap,
                                 size_t* count, double* regime_ratio)
{
    return guard([&] {
        need(sc, "scenario");
        const rdars::Geometry geo = rdars::scenario_geometry(sc->value);
        rdars::require(geo.n_ues() == 2, rdars::ErrorCode::InvalidArgument, "two-UE selection needs K = 2");
        const rdars::SparsitySelection sel =
            rdars::proposition1_select(geo, sc->value.config, sc->value.config.regime_factor);
        copy_ints(sel.etas, etas, cap, count);
        if (label) *label = static_cast<rdars_two_ue_case>(sel.label);
        if (regime_ratio) *regime_ratio = sel.regime_ratio;
    });
}

rdars_status rdars_two_ue_cscc(const rdars_scenario* sc, int eta, double* eps)
{
    return guard([&] {
        need(sc, "scenario");
        need(eps, "eps");
        const rdars::Geometry geo = rdars::scenario_geometry(sc->value);
        rdars::require(geo.n_ues() == 2, rdars::ErrorCode::InvalidArgument, "two-UE correlation needs K = 2");
        const rdars::SystemConfig& cfg = sc->value.config;
        const rdars::ModeSelection mode = rdars::make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0);
        *eps = rdars::cscc_closed(geo, cfg, mode, rdars::reference_beam(geo, cfg));
    });
}

// ---- campaigns -------------------------------------------------------------

rdars_status rdars_campaign_create(const rdars_scenario* sc, rdars_campaign** out)
{
    return guard([&] {
        need(sc, "scenario");
        need(out, "out");
        auto* c = new rdars_campaign{};
        c->value.scenario = sc->value;
        *out = c;
    });
}

rdars_status rdars_campaign_set_trials(rdars_campaign* c, int n_trials)
{
    return guard([&] {
        need(c, "campaign");
        rdars::require(n_trials >= 1, rdars::ErrorCode::InvalidArgument, "n_trials must be >= 1");
        c->value.n_trials = n_trials;
    });
}

rdars_status rdars_campaign_set_seed(rdars_campaign* c, uint64_t seed)
{
    return guard([&] {
        need(c, "campaign");
        c->value.seed = seed;
    });
}

rdars_status rdars_campaign_set_algorithms(rdars_campaign* c, const char* list)
{
    return guard([&] {
        need(c, "campaign");
        need(list, "list");
        c->value.algorithms = rdars::parse_algorithm_list(list);
    });
}

rdars_status rdars_campaign_set_sweep(rdars_campaign* c, const char* spec)
{
    return guard([&] {
        need(c, "campaign");
        if (!spec || !*spec)
            c->value.sweep.reset();
        else
            c->value.sweep = rdars::parse_sweep(spec);
    });
}

rdars_status rdars_campaign_set_threads(rdars_campaign* c, int threads)
{
    return guard([&] {
        need(c, "campaign");
        rdars::require(threads >= 1, rdars::ErrorCode::InvalidArgument, "threads must be >= 1");
        c->value.threads = threads;
    });
}

rdars_status rdars_campaign_run(const rdars_campaign* c, rdars_result** out)
{
    return guard([&] {
        need(c, "campaign");
        need(out, "out");
        auto* r = new rdars_result{};
        try {
            r->table = rdars::run_campaign(c->value);
            r->summary = r->table.summary();
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
    });
}

void rdars_campaign_destroy(rdars_campaign* c) { delete c; }

size_t rdars_result_row_count(const rdars_result* r) { return r ? r->table.rows.size() : 0; }

rdars_status rdars_result_get_row(const rdars_result* r, size_t i, rdars_row* out)
{
    return guard([&] {
        need(r, "result");
        need(out, "out");
        rdars::require(i < r->table.rows.size(), rdars::ErrorCode::InvalidArgument, "row index out of range");
        const rdars::TrialRecord& t = r->table.rows[i];
        out->trial = t.trial;
        out->sweep_value = t.sweep_value;
        out->algorithm = static_cast<rdars_algorithm>(t.algorithm);
        out->eta = t.eta;
        out->sum_rate = t.sum_rate;
        out->min_ue_rate = t.min_ue_rate;
        out->iterations = t.iterations;
        out->wall_ms = t.wall_ms;
        out->status = t.status.c_str();
    });
}

size_t rdars_result_summary_count(const rdars_result* r) { return r ? r->summary.size() : 0; }

rdars_status rdars_result_get_summary(const rdars_result* r, size_t i, rdars_summary* out)
{
    return guard([&] {
        need(r, "result");
        need(out, "out");
        rdars::require(i < r->summary.size(), rdars::ErrorCode::InvalidArgument, "summary index out of range");
        const rdars::CellSummary& s = r->summary[i];
        out->sweep_value = s.sweep_value;
        out->algorithm = static_cast<rdars_algorithm>(s.algorithm);
        out->n_ok = s.n_ok;
        out->n_failed = s.n_failed;
        out->mean_sum_rate = s.mean_sum_rate;
        out->std_sum_rate = s.std_sum_rate;
        out->mean_min_ue_rate = s.mean_min_ue_rate;
        out->mean_wall_ms = s.mean_wall_ms;
    });
}

rdars_status rdars_result_write_csv(const rdars_result* r, const char* path, int include_timing)
{
    return guard([&] {
        need(r, "result");
        need(path, "path");
        rdars::emit_csv(r->table, path, include_timing != 0);
    });
}

void rdars_result_destroy(rdars_result* r) { delete r; }

const char* rdars_algorithm_name(rdars_algorithm a)
{
    if (a < RDARS_ALGO_WA_OPT_ETA || a > RDARS_ALGO_TWO_UE_PROP1) return "?";
    return rdars::to_string(static_cast<rdars::Algorithm>(a));
}

// ---- analysis --------------------------------------------------------------

rdars_status rdars_analyze_two_ue(const rdars_scenario* sc, uint64_t seed, const char* path)
{
    return guard([&] {
        need(sc, "scenario");
        need(path, "path");
        rdars::Scenario s = sc->value;
        s.config.n_ues = 2;
        if (s.ue_pos.size() != 2) {
            rdars::TrialRng rng(seed, 0);
            s.ue_pos = rdars::drop_ues(s.ue_center, s.ue_radius, 2, rng);
        }
        const rdars::EtaSweep sweep = rdars::two_ue_eta_sweep(rdars::scenario_geometry(s), s.config);
        rdars::write_text_file(path, rdars::format_eta_sweep_csv(sweep));
    });
}

rdars_status rdars_validate(uint64_t seed, rdars_check_callback cb, void* user, int* n_failed)
{
    return guard([&] {
        int failed = 0;
        for (const rdars::CheckResult& c : rdars::run_invariant_suite(seed)) {
            if (!c.passed) ++failed;
            if (cb) cb(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
        }
        if (n_failed) *n_failed = failed;
    });
}

}  // extern "C"
