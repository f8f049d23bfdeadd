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

#include "rdars/validation.hpp"

#include "rdars/closed_form.hpp"
#include "rdars/harness.hpp"
#include "rdars/metrics.hpp"
#include "rdars/wmmse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace rdars {

namespace {

std::string sci(const char* label, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.3e", label, v);
    return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Geometry random_drop(const Scenario& sc, int K, std::uint64_t seed, std::uint64_t t)
{
    TrialRng rng(seed, t);
    return derive_geometry(sc.bs_pos, sc.rdars_pos, drop_ues(sc.ue_center, sc.ue_radius, K, rng), sc.config);
}

// Small well-conditioned instance with synthetic angles and gains.
Geometry small_instance(int K, std::uint64_t seed, std::uint64_t t)
{
    TrialRng rng(seed, t);
    Geometry g;
    g.u_br_aoa = 2.0 * rng.uniform() - 1.0;
    g.u_br_aod = 2.0 * rng.uniform() - 1.0;
    g.kappa_br = 0.05;
    for (int k = 0; k < K; ++k) {
        g.u_ru_aod.push_back(2.0 * rng.uniform() - 1.0);
        g.kappa_ru.push_back(0.5 + rng.uniform());
        g.ue_pos.push_back(Vec3::Zero());
    }
    return g;
}

SystemConfig small_config(int K)
{
    SystemConfig cfg;
    cfg.n_tx = 8;
    cfg.n_elems = 32;
    cfg.n_connected = 4;
    cfg.n_ues = K;
    cfg.total_power = 25.0;
    cfg.noise_power = 1.0;
    return cfg;
}

CheckResult check_dirichlet(std::uint64_t seed)
{
    TrialRng rng(seed, 1);
    const double lambda = 1.0, d = 0.5;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int a = 1 + static_cast<int>(rng.uniform() * 20);
        const int eta = 1 + static_cast<int>(rng.uniform() * 6);
        const double du = 4.0 * rng.uniform() - 2.0;
        cplx brute = 0.0;
        for (int m = 0; m < a; ++m) brute += std::polar(1.0, 2.0 * kPi * d / lambda * m * eta * du);
        worst = std::max(worst, std::abs(dirichlet_sparse(a, eta, d, lambda, du).steered - brute) / a);
    }
    return {"dirichlet kernel vs direct sum", worst < 1e-9, sci("max error", worst)};
}

CheckResult check_single_ue(std::uint64_t seed)
{
    const Scenario sc = default_scenario();
    SystemConfig cfg = sc.config;
    cfg.n_ues = 1;
    double worst = 0.0, worst_power = 0.0;
    for (std::uint64_t t = 0; t < 10; ++t) {
        const Geometry g = random_drop(sc, 1, seed, t);
        const double bound = single_ue_snr_bound(g, cfg);
        for (int eta : feasible_sparsities(cfg.n_elems, cfg.n_connected)) {
            const ModeSelection mode = make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0);
            const BeamformingSolution s = single_ue_solution(g, cfg, mode).as_solution();
            const CMat H = effective_channels(los_channels(g, cfg), s.passive, mode);
            worst = std::max(worst, rel_err(sinr_all(H, s.V, cfg.noise_power)[0], bound));
            worst_power = std::max(worst_power, rel_err(s.power(), cfg.total_power));
        }
    }
    return {"single-UE closed form reaches the SNR bound", worst < 1e-9 && worst_power < 1e-9,
            sci("max relative error", worst)};
}

CheckResult check_cscc(std::uint64_t seed)
{
    const Scenario sc = default_scenario();
    SystemConfig cfg = sc.config;
    cfg.n_ues = 2;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const Geometry g = random_drop(sc, 2, seed, 100 + t);
        const ChannelSet ch = los_channels(g, cfg);
        const PassiveBeam ref = reference_beam(g, cfg);
        for (int eta : feasible_sparsities(cfg.n_elems, cfg.n_connected)) {
            const ModeSelection mode = make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0);
            const double direct = cscc(effective_channel(ch, ref, mode, 0), effective_channel(ch, ref, mode, 1));
            const double closed = cscc_closed(g, cfg, mode, ref);
            worst = std::max({worst, std::abs(direct - closed), std::abs(case2_cscc(g, cfg, eta) - closed)});
        }
    }
    return {"closed-form correlation vs assembled channels", worst < 1e-9, sci("max error", worst)};
}

CheckResult check_case3()
{
    Scenario sc = default_scenario();
    SystemConfig cfg = sc.config;
    cfg.n_ues = 2;
    const Vec3 dir = (sc.ue_center - sc.rdars_pos).normalized();
    const std::vector<Vec3> ues{sc.rdars_pos + 40.0 * dir, sc.rdars_pos + 70.0 * dir};
    const Geometry g = derive_geometry(sc.bs_pos, sc.rdars_pos, ues, cfg);
    double worst = 0.0;
    for (int eta : feasible_sparsities(cfg.n_elems, cfg.n_connected)) {
        const ModeSelection mode = make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0);
        worst = std::max(worst, std::abs(cscc_closed(g, cfg, mode, PassiveBeam::ones(cfg.n_elems)) - 1.0));
    }
    return {"co-directional UEs are fully correlated", worst < 1e-12, sci("max |eps - 1|", worst)};
}

CheckResult check_wmmse(std::uint64_t seed)
{
    const int K = 4;
    const SystemConfig cfg = small_config(K);
    double obj_rise = 0.0, rate_drop = 0.0, power_excess = 0.0, modulus = 0.0, identity = 0.0;
    int not_converged = 0;
    for (std::uint64_t t = 0; t < 10; ++t) {
        const Geometry g = small_instance(K, seed, 200 + t);
        const ChannelSet ch = los_channels(g, cfg);
        const ModeSelection mode = make_mode(cfg.n_elems, cfg.n_connected, 1 + static_cast<int>(t % 3), cfg.m0);
        const FixedEtaResult r = solve_fixed_eta(ch, mode, cfg);
        for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
            obj_rise = std::max(obj_rise, r.objective_trace[i] - r.objective_trace[i - 1]);
        for (std::size_t i = 1; i < r.sum_rate_trace.size(); ++i)
            rate_drop = std::max(rate_drop, r.sum_rate_trace[i - 1] - r.sum_rate_trace[i]);
        power_excess = std::max(power_excess, r.solution.power() / cfg.total_power - 1.0);
        modulus = std::max(modulus, (r.solution.passive.phi.cwiseAbs().array() - 1.0).abs().maxCoeff());
        const CMat H = effective_channels(ch, r.solution.passive, mode);
        const CVec mu = update_receivers(H, r.solution.V, cfg.noise_power, cfg.total_power);
        const RVec e = mse_all(H, r.solution.V, mu, cfg.noise_power);
        const std::vector<double> gam = sinr_all(H, r.solution.V, cfg.noise_power);
        for (int k = 0; k < K; ++k) identity = std::max(identity, std::abs(e[k] - 1.0 / (1.0 + gam[k])));
        if (!r.converged) ++not_converged;
    }
    const bool ok = obj_rise <= 1e-9 && rate_drop <= 1e-8 && power_excess <= 1e-6 && modulus <= 1e-12 &&
                    identity <= 1e-9 && not_converged == 0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "objective rise %.2e, rate drop %.2e, power excess %.2e, modulus %.2e, mmse identity %.2e, "
                  "not converged %d",
                  obj_rise, rate_drop, power_excess, modulus, identity, not_converged);
    return {"alternating updates are monotone and feasible", ok, buf};
}

CheckResult check_power_iteration(std::uint64_t seed)
{
    TrialRng rng(seed, 300);
    auto gauss = [&] {
        const double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    double worst_drop = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int N = 2 + i;
        CMat A(N, N);
        CVec beta(N);
        for (int r = 0; r < N; ++r) {
            beta[r] = cplx(gauss(), gauss());
            for (int c = 0; c < N; ++c) A(r, c) = cplx(gauss(), gauss());
        }
        const CMat C = A * A.adjoint();
        const PowerIterationResult res =
            power_iteration(C, beta, 0.0, 1e-10, 500, LiftedPhase::lift(PassiveBeam::ones(N)));
        for (std::size_t k = 1; k < res.objective.size(); ++k)
            worst_drop = std::max(worst_drop, (res.objective[k - 1] - res.objective[k]) /
                                                  std::max(1.0, std::abs(res.objective[k - 1])));
    }
    return {"lifted phase objective is nondecreasing", worst_drop <= 1e-12, sci("max relative drop", worst_drop)};
}

CheckResult check_determinism(std::uint64_t seed)
{
    Campaign c;
    c.scenario = default_scenario();
    c.scenario.config.n_ues = 2;
    c.n_trials = 4;
    c.seed = seed;
    c.algorithms = {Algorithm::CompactEta1, Algorithm::TwoUeProp1};
    const std::string serial = format_csv(run_campaign(c), false);
    c.threads = 3;
    const std::string parallel = format_csv(run_campaign(c), false);
    return {"campaign output is seed-deterministic", serial == parallel,
            serial == parallel ? "serial and parallel CSV identical" : "serial and parallel CSV differ"};
}

CheckResult guarded(const char* name, const std::function<CheckResult()>& fn)
{
    try {
        return fn();
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed)
{
    return {
        guarded("dirichlet", [&] { return check_dirichlet(seed); }),
        guarded("single-ue", [&] { return check_single_ue(seed); }),
        guarded("cscc", [&] { return check_cscc(seed); }),
        guarded("case3", [] { return check_case3(); }),
        guarded("wmmse", [&] { return check_wmmse(seed); }),
        guarded("power-iteration", [&] { return check_power_iteration(seed); }),
        guarded("determinism", [&] { return check_determinism(seed); }),
    };
}

}  // namespace rdars
