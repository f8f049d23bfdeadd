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

#include "rdars/harness.hpp"

#include "rdars/error.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace rdars {

namespace {

struct AlgoName {
    Algorithm algo;
    const char* name;
};

constexpr AlgoName kAlgoNames[] = {
    {Algorithm::WaOptEta, "WA_OPT_ETA"},           {Algorithm::CompactEta1, "COMPACT_ETA1"},
    {Algorithm::RandomEta, "RANDOM_ETA"},          {Algorithm::ExhaustiveEta, "EXHAUSTIVE_ETA"},
    {Algorithm::SingleUeClosed, "SINGLE_UE_CLOSED"}, {Algorithm::TwoUeProp1, "TWO_UE_PROP1"},
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::string fmt9(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_safe(std::string s)
{
    for (char& c : s)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

const char* to_string(Algorithm a)
{
    for (const auto& n : kAlgoNames)
        if (n.algo == a) return n.name;
    return "?";
}

Algorithm parse_algorithm(const std::string& name)
{
    std::string up = trim(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const auto& n : kAlgoNames)
        if (up == n.name) return n.algo;
    fail(ErrorCode::InvalidArgument, "unknown algorithm '" + name + "'");
}

std::vector<Algorithm> parse_algorithm_list(const std::string& list)
{
    std::vector<Algorithm> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        const Algorithm a = parse_algorithm(item);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    require(!out.empty(), ErrorCode::InvalidArgument, "algorithm list is empty");
    return out;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<Vec3> drop_ues(const Vec3& center, double radius, int K, TrialRng& rng)
{
    require(radius >= 0.0, ErrorCode::InvalidArgument, "drop_ues: negative radius");
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double r = radius * std::sqrt(rng.uniform());
        const double t = 2.0 * kPi * rng.uniform();
        out.emplace_back(center.x() + r * std::cos(t), center.y() + r * std::sin(t), center.z());
    }
    return out;
}

Sweep parse_sweep(const std::string& spec)
{
    const auto eq = spec.find('=');
    require(eq != std::string::npos, ErrorCode::Parse, "sweep: expected name=a:b:step");
    Sweep s;
    s.name = trim(spec.substr(0, eq));
    require(s.name == "ptot_dbm", ErrorCode::InvalidArgument, "sweep: only ptot_dbm is supported");
    std::stringstream ss(spec.substr(eq + 1));
    std::string part;
    std::vector<double> v;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(trim(part), &used));
            require(used == trim(part).size(), ErrorCode::Parse, "sweep: bad number '" + part + "'");
        } catch (const std::logic_error&) {
            fail(ErrorCode::Parse, "sweep: bad number '" + part + "'");
        }
    }
    require(v.size() == 3 || v.size() == 1, ErrorCode::Parse, "sweep: expected a:b:step or a single value");
    for (double x : v) require(std::isfinite(x), ErrorCode::InvalidArgument, "sweep: values must be finite");
    if (v.size() == 1) {
        s.values = {v[0]};
        return s;
    }
    const double a = v[0], b = v[1], step = v[2];
    require(step > 0.0 && b >= a, ErrorCode::InvalidArgument, "sweep: need step > 0 and b >= a");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    require(n < 100000, ErrorCode::InvalidArgument, "sweep: too many points");
    for (long i = 0; i <= n; ++i) s.values.push_back(a + static_cast<double>(i) * step);
    return s;
}

void validate_campaign(const Campaign& c)
{
    require(c.n_trials >= 1, ErrorCode::InvalidArgument, "campaign: n_trials must be >= 1");
    require(!c.algorithms.empty(), ErrorCode::InvalidArgument, "campaign: no algorithms");
    require(c.threads >= 1, ErrorCode::InvalidArgument, "campaign: threads must be >= 1");
    if (c.sweep) {
        require(!c.sweep->values.empty(), ErrorCode::InvalidArgument, "campaign: empty sweep");
        for (double v : c.sweep->values)
            require(std::isfinite(v), ErrorCode::InvalidArgument, "campaign: sweep values must be finite");
    }
    validate_config(c.scenario.config);
    require(c.scenario.ue_radius >= 0.0, ErrorCode::InvalidArgument, "campaign: negative drop radius");
}

// ---------------------------------------------------------------------------

namespace {

void fill_from(TrialRecord& rec, const WaResult& w)
{
    rec.eta = w.mode.eta;
    rec.sum_rate = w.report.sum_rate;
    rec.min_ue_rate = w.report.min_rate();
    rec.iterations = w.report.iterations;
    rec.status = w.converged ? "ok" : "not_converged";
}

}  // namespace

TrialRecord run_trial(const Geometry& geo, const SystemConfig& cfg, Algorithm algo, double random_u)
{
    TrialRecord rec;
    rec.algorithm = algo;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const std::vector<int> F = feasible_sparsities(cfg.n_elems, cfg.n_connected);
        switch (algo) {
        case Algorithm::WaOptEta:
            fill_from(rec, wa_solve(geo, cfg));
            break;
        case Algorithm::CompactEta1:
            fill_from(rec, wa_solve_fixed(geo, cfg, 1));
            break;
        case Algorithm::RandomEta: {
            auto idx = static_cast<std::size_t>(random_u * static_cast<double>(F.size()));
            idx = std::min(idx, F.size() - 1);
            fill_from(rec, wa_solve_fixed(geo, cfg, F[idx]));
            break;
        }
        case Algorithm::ExhaustiveEta: {
            std::optional<WaResult> best;
            int total_iters = 0;
            for (int eta : F) {
                WaResult w = wa_solve_fixed(geo, cfg, eta);
                total_iters += w.report.iterations;
                if (!best || w.report.sum_rate > best->report.sum_rate * (1.0 + kSparsityTieRel)) best = std::move(w);
            }
            fill_from(rec, *best);
            rec.iterations = total_iters;
            break;
        }
        case Algorithm::SingleUeClosed: {
            require(geo.n_ues() == 1, ErrorCode::InvalidArgument, "SINGLE_UE_CLOSED requires K = 1");
            const ModeSelection mode = make_mode(cfg.n_elems, cfg.n_connected, 1, cfg.m0);
            const SingleUeSolution s = single_ue_solution(geo, cfg, mode);
            const BeamformingSolution sol = s.as_solution();
            const RateReport r = sum_rate(effective_channels(los_channels(geo, cfg), sol.passive, mode), sol.V,
                                          cfg.noise_power);
            rec.eta = 1;
            rec.sum_rate = r.sum_rate;
            rec.min_ue_rate = r.min_rate();
            break;
        }
        case Algorithm::TwoUeProp1: {
            require(geo.n_ues() == 2, ErrorCode::InvalidArgument, "TWO_UE_PROP1 requires K = 2");
            const SparsitySelection sel = proposition1_select(geo, cfg, cfg.regime_factor);
            int eta = sel.etas.front();
            if (sel.label == TwoUeCase::Subcase1 && sel.etas.size() > 1) {
                // deepest kernel null among the candidates
                const double du = geo.u_ru_aod[1] - geo.u_ru_aod[0];
                double best = std::numeric_limits<double>::infinity();
                for (int e : sel.etas) {
                    const double s = std::abs(dirichlet_sparse(cfg.n_connected, e, cfg.spacing, cfg.wavelength, du,
                                                               cfg.m0).value);
                    if (s < best) {
                        best = s;
                        eta = e;
                    }
                }
            }
            fill_from(rec, wa_solve_fixed(geo, cfg, eta));
            break;
        }
        }
    } catch (const std::exception& e) {
        rec.status = std::string("failed:") + e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

ResultTable run_campaign(const Campaign& c)
{
    validate_campaign(c);
    const Scenario& sc = c.scenario;
    const std::vector<double> sweep_values =
        c.sweep ? c.sweep->values : std::vector<double>{watt_to_dbm(sc.config.total_power)};

    std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(c.n_trials));
    auto work = [&](int t) {
        auto& out = per_trial[static_cast<std::size_t>(t)];
        TrialRng rng(c.seed, static_cast<std::uint64_t>(t));
        const std::vector<Vec3> ues = drop_ues(sc.ue_center, sc.ue_radius, sc.config.n_ues, rng);
        const double random_u = rng.uniform();
        Geometry geo;
        try {
            geo = derive_geometry(sc.bs_pos, sc.rdars_pos, ues, sc.config);
        } catch (const std::exception& e) {
            for (double v : sweep_values)
                for (Algorithm a : c.algorithms) {
                    TrialRecord rec;
                    rec.trial = t;
                    rec.sweep_value = v;
                    rec.algorithm = a;
                    rec.status = std::string("failed:") + e.what();
                    out.push_back(rec);
                }
            return;
        }
        for (double v : sweep_values) {
            SystemConfig cfg = sc.config;
            if (c.sweep) cfg.total_power = dbm_to_watt(v);
            for (Algorithm a : c.algorithms) {
                TrialRecord rec = run_trial(geo, cfg, a, random_u);
                rec.trial = t;
                rec.sweep_value = v;
                out.push_back(std::move(rec));
            }
        }
    };

    const int workers = std::min(c.threads, c.n_trials);
    if (workers <= 1) {
        for (int t = 0; t < c.n_trials; ++t) work(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int t = next++; t < c.n_trials; t = next++) work(t);
            });
        for (auto& th : pool) th.join();
    }

    ResultTable table;
    for (auto& v : per_trial)
        for (auto& r : v) table.rows.push_back(std::move(r));
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const TrialRecord& x, const TrialRecord& y) {
        if (x.sweep_value != y.sweep_value) return x.sweep_value < y.sweep_value;
        const int cmp = std::string(to_string(x.algorithm)).compare(to_string(y.algorithm));
        if (cmp != 0) return cmp < 0;
        return x.trial < y.trial;
    });
    return table;
}

std::vector<CellSummary> ResultTable::summary() const
{
    std::vector<CellSummary> out;
    std::map<std::pair<double, std::string>, std::vector<const TrialRecord*>> cells;
    for (const auto& r : rows) cells[{r.sweep_value, to_string(r.algorithm)}].push_back(&r);
    for (const auto& [key, recs] : cells) {
        CellSummary s;
        s.sweep_value = key.first;
        s.algorithm = recs.front()->algorithm;
        double sum = 0.0, sum_min = 0.0, sum_ms = 0.0;
        for (const auto* r : recs) {
            if (!r->ok()) {
                ++s.n_failed;
                continue;
            }
            ++s.n_ok;
            sum += r->sum_rate;
            sum_min += r->min_ue_rate;
            sum_ms += r->wall_ms;
        }
        if (s.n_ok > 0) {
            s.mean_sum_rate = sum / s.n_ok;
            s.mean_min_ue_rate = sum_min / s.n_ok;
            s.mean_wall_ms = sum_ms / s.n_ok;
            double ss = 0.0;
            for (const auto* r : recs)
                if (r->ok()) ss += (r->sum_rate - s.mean_sum_rate) * (r->sum_rate - s.mean_sum_rate);
            s.std_sum_rate = s.n_ok > 1 ? std::sqrt(ss / (s.n_ok - 1)) : 0.0;
        }
        out.push_back(s);
    }
    return out;
}

std::string format_csv(const ResultTable& t, bool include_timing)
{
    std::string out = "trial,sweep_value,algorithm,eta,sum_rate_bits,min_ue_rate,iters,wall_ms,status\n";
    for (const auto& r : t.rows) {
        out += std::to_string(r.trial) + "," + fmt9(r.sweep_value) + "," + to_string(r.algorithm) + "," +
               std::to_string(r.eta) + "," + fmt9(r.sum_rate) + "," + fmt9(r.min_ue_rate) + "," +
               std::to_string(r.iterations) + "," + (include_timing ? fmt9(r.wall_ms) : std::string("0")) + "," +
               csv_safe(r.status) + "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

void emit_csv(const ResultTable& t, const std::string& path, bool include_timing)
{
    write_text_file(path, format_csv(t, include_timing));
}

// ---------------------------------------------------------------------------

EtaSweep two_ue_eta_sweep(const Geometry& geo, const SystemConfig& cfg)
{
    require(geo.n_ues() == 2, ErrorCode::InvalidArgument, "eta sweep needs a two-UE geometry");
    EtaSweep out;
    out.selection = proposition1_select(geo, cfg, cfg.regime_factor);
    const std::vector<int> F = feasible_sparsities(cfg.n_elems, cfg.n_connected);
    const double du = geo.u_ru_aod[1] - geo.u_ru_aod[0];
    const std::vector<int> R =
        std::abs(du) > kCoDirectionalTol ? r_set(cfg.n_connected, cfg.spacing, cfg.wavelength, du, F) : std::vector<int>{};
    const ChannelSet ch = los_channels(geo, cfg);
    const PassiveBeam ref = reference_beam(geo, cfg);
    const PassiveBeam ones = PassiveBeam::ones(cfg.n_elems);
    for (int eta : F) {
        const ModeSelection mode = make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0);
        EtaSweepRow row;
        row.eta = eta;
        const double s = dirichlet_sparse(cfg.n_connected, eta, cfg.spacing, cfg.wavelength, du, cfg.m0).value;
        row.kernel_sq = s * s / (double(cfg.n_connected) * cfg.n_connected);
        row.eps_ref_direct = cscc(effective_channel(ch, ref, mode, 0), effective_channel(ch, ref, mode, 1));
        row.eps_ref_closed = cscc_closed(geo, cfg, mode, ref);
        row.eps_bar = case2_cscc(geo, cfg, eta);
        row.eps_ones = cscc_closed(geo, cfg, mode, ones);
        row.in_r_set = std::find(R.begin(), R.end(), eta) != R.end();
        out.rows.push_back(row);
    }
    return out;
}

std::string format_eta_sweep_csv(const EtaSweep& s)
{
    std::string out = "eta,kernel_sq,eps_ref_direct,eps_ref_closed,eps_bar,eps_ones,in_r_set,selected,case\n";
    for (const auto& r : s.rows) {
        const bool sel = std::find(s.selection.etas.begin(), s.selection.etas.end(), r.eta) != s.selection.etas.end();
        out += std::to_string(r.eta) + "," + fmt9(r.kernel_sq) + "," + fmt9(r.eps_ref_direct) + "," +
               fmt9(r.eps_ref_closed) + "," + fmt9(r.eps_bar) + "," + fmt9(r.eps_ones) + "," +
               (r.in_r_set ? "1" : "0") + "," + (sel ? "1" : "0") + "," + to_string(s.selection.label) + "\n";
    }
    return out;
}

}  // namespace rdars
