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

#include "rdars/closed_form.hpp"

#include "rdars/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <set>

namespace rdars {

DirichletKernel dirichlet_sparse(int a, int eta, double d, double lambda, double du, int m0)
{
    require(a >= 1 && eta >= 1 && m0 >= 1, ErrorCode::InvalidArgument, "dirichlet_sparse: invalid a/eta/m0");
    const double x = d * eta * du / lambda;
    // reduce to r = x - l so both sines are evaluated near zero; the ratio
    // picks up (-1)^{(a-1) l}
    const double l = std::nearbyint(x);
    const double r = x - l;
    const double sign = std::fmod(std::abs(l) * (a - 1), 2.0) == 0.0 ? 1.0 : -1.0;
    DirichletKernel out;
    out.value = r == 0.0 ? sign * a : sign * std::sin(a * kPi * r) / std::sin(kPi * r);
    out.phase = 2.0 * kPi * d / lambda * ((m0 - 1) + 0.5 * (a - 1) * eta) * du;
    out.steered = out.value * std::polar(1.0, out.phase);
    return out;
}

SteeredSums steered_sums(const ModeSelection& mode, double d, double lambda, const PassiveBeam& passive, double du)
{
    require(passive.size() == mode.n, ErrorCode::InvalidArgument, "steered_sums: passive beam length mismatch");
    const RVec th = passive.angles();
    const double c = 2.0 * kPi * d / lambda;
    SteeredSums s;
    for (int n = 0; n < mode.n; ++n) {
        const cplx e = std::polar(1.0, th[n] + c * n * du);
        s.full += e;
        if (mode.a_vec[static_cast<std::size_t>(n)]) s.connected += e;
    }
    return s;
}

// ---------------------------------------------------------------------------
// single UE

double single_ue_snr_bound(const Geometry& geo, const SystemConfig& cfg)
{
    require(geo.n_ues() == 1, ErrorCode::InvalidArgument, "single-UE bound needs exactly one UE");
    const double N = cfg.n_elems, a = cfg.n_connected, Nt = cfg.n_tx;
    const double kr = geo.kappa_ru[0], kb = geo.kappa_br;
    return kr * kr * cfg.total_power * (kb * kb * (N - a) * (N - a) * Nt + a) / cfg.noise_power;
}

SingleUeSolution single_ue_solution(const Geometry& geo, const SystemConfig& cfg, const ModeSelection& mode)
{
    require(geo.n_ues() == 1, ErrorCode::InvalidArgument, "single_ue_solution: needs exactly one UE");
    require(mode.n == cfg.n_elems && mode.a == cfg.n_connected, ErrorCode::InvalidArgument,
            "single_ue_solution: mode does not match the configuration");
    const int N = cfg.n_elems, Nt = cfg.n_tx, a = cfg.n_connected;
    const double d = cfg.spacing, lam = cfg.wavelength;
    const double u_ru = geo.u_ru_aod[0];

    SingleUeSolution s;
    RVec th(N);
    const double c = 2.0 * kPi * d / lam;
    for (int n = 0; n < N; ++n) th[n] = c * n * (u_ru - geo.u_br_aoa);
    s.passive = PassiveBeam::from_angles(th);

    const double reflect = geo.kappa_br * geo.kappa_br * double(N - a) * double(N - a) * Nt;
    s.p_bs = reflect * cfg.total_power / (reflect + a);
    s.p_rdars = cfg.total_power - s.p_bs;

    const CVec b_tx = steering(Nt, geo.u_br_aod, d, lam);
    s.w = std::sqrt(s.p_bs) * b_tx / b_tx.norm();

    // normalised over the connected entries so that |f|^2 = p_rdars
    const CVec b_ru = steering(N, u_ru, d, lam);
    s.f.resize(a);
    for (int m = 0; m < a; ++m) s.f[m] = b_ru[mode.index_set[static_cast<std::size_t>(m)] - 1];
    s.f *= std::sqrt(s.p_rdars) / std::sqrt(static_cast<double>(a));

    s.gamma_max = single_ue_snr_bound(geo, cfg);
    return s;
}

BeamformingSolution SingleUeSolution::as_solution() const
{
    BeamformingSolution sol;
    sol.n_tx = static_cast<int>(w.size());
    sol.V.resize(w.size() + f.size(), 1);
    sol.V.col(0) << w, f;
    sol.passive = passive;
    return sol;
}

std::array<double, 2> SingleUeSolution::printed_split(const SystemConfig& cfg, double kappa_br) const
{
    const double N = cfg.n_elems, a = cfg.n_connected, Nt = cfg.n_tx, P = cfg.total_power;
    const double den = std::sqrt(kappa_br * kappa_br * (N - a) * (N - a) * Nt + a);
    return {kappa_br * (N - a) * std::sqrt(Nt * P) / den, std::sqrt(P * a) / den};
}

// ---------------------------------------------------------------------------
// two UEs

LinearScheme parse_linear_scheme(const std::string& name)
{
    if (name == "MRT" || name == "mrt") return LinearScheme::MRT;
    if (name == "ZF" || name == "zf") return LinearScheme::ZF;
    if (name == "MMSE" || name == "mmse") return LinearScheme::MMSE;
    fail(ErrorCode::InvalidArgument, "unknown beamforming scheme '" + name + "'");
}

std::array<double, 2> two_ue_sinr(LinearScheme scheme, std::array<double, 2> p, std::array<double, 2> beta,
                                  double eps, double noise)
{
    require(p[0] >= 0.0 && p[1] >= 0.0, ErrorCode::InvalidArgument, "two_ue_sinr: negative power");
    require(eps >= 0.0 && eps <= 1.0, ErrorCode::InvalidArgument, "two_ue_sinr: eps outside [0,1]");
    require(noise > 0.0, ErrorCode::InvalidArgument, "two_ue_sinr: noise must be positive");
    std::array<double, 2> g{};
    for (int k = 0; k < 2; ++k) {
        const int o = 1 - k;
        const double snr = p[k] * beta[k] * beta[k] / noise;
        double loss = 0.0;
        switch (scheme) {
        case LinearScheme::MRT: {
            const double t = p[o] * beta[k] * beta[k] * eps / noise;
            loss = t / (1.0 + t);
            break;
        }
        case LinearScheme::ZF:
            loss = eps;
            break;
        case LinearScheme::MMSE: {
            const double t = p[o] * beta[o] * beta[o] / noise;
            loss = t / (1.0 + t) * eps;
            break;
        }
        }
        g[k] = snr * (1.0 - loss);
    }
    return g;
}

const char* to_string(TwoUeCase c)
{
    switch (c) {
    case TwoUeCase::Subcase1: return "SUBCASE1";
    case TwoUeCase::Subcase2: return "SUBCASE2";
    case TwoUeCase::Case2: return "CASE2";
    case TwoUeCase::Case3: return "CASE3";
    }
    return "?";
}

TwoUeAnalysis analyze_two_ue(const Geometry& geo, const SystemConfig& cfg, const ModeSelection& mode,
                             const PassiveBeam& passive)
{
    require(geo.n_ues() == 2, ErrorCode::InvalidArgument, "two-UE analysis needs exactly two UEs");
    const double d = cfg.spacing, lam = cfg.wavelength;
    const int a = mode.a;
    TwoUeAnalysis t;
    t.delta_u = geo.u_ru_aod[1] - geo.u_ru_aod[0];
    t.u_ref = 0.5 * (geo.u_ru_aod[0] + geo.u_ru_aod[1]);
    for (int k = 0; k < 2; ++k) {
        const double kr = geo.kappa_ru[static_cast<std::size_t>(k)];
        t.delta_u_k[k] = geo.u_br_aoa - geo.u_ru_aod[static_cast<std::size_t>(k)];
        const SteeredSums s = steered_sums(mode, d, lam, passive, t.delta_u_k[k]);
        t.xi[k] = geo.kappa_br * kr * (s.full - s.connected);
        t.beta[k] = std::sqrt(std::norm(t.xi[k]) * cfg.n_tx + kr * kr * a);
        t.d[k] = std::sqrt(static_cast<double>(cfg.n_tx)) * t.xi[k];
    }
    t.s12 = geo.kappa_ru[0] * geo.kappa_ru[1] * dirichlet_sparse(a, mode.eta, d, lam, t.delta_u, mode.m0).steered;
    const cplx num = t.d[0] * std::conj(t.d[1]) + t.s12;
    const double den = (std::norm(t.d[0]) + geo.kappa_ru[0] * geo.kappa_ru[0] * a) *
                       (std::norm(t.d[1]) + geo.kappa_ru[1] * geo.kappa_ru[1] * a);
    t.eps = std::clamp(std::norm(num) / den, 0.0, 1.0);
    const double s_abs = std::abs(t.s12);
    t.direct_dominance = s_abs > 0.0 ? std::abs(t.d[0] * std::conj(t.d[1])) / s_abs
                                     : std::numeric_limits<double>::infinity();
    return t;
}

double cscc_closed(const Geometry& geo, const SystemConfig& cfg, const ModeSelection& mode,
                   const PassiveBeam& passive)
{
    return analyze_two_ue(geo, cfg, mode, passive).eps;
}

PassiveBeam reference_beam(const Geometry& geo, const SystemConfig& cfg)
{
    require(geo.n_ues() == 2, ErrorCode::InvalidArgument, "reference_beam: needs exactly two UEs");
    const double u_ref = 0.5 * (geo.u_ru_aod[0] + geo.u_ru_aod[1]);
    const double c = 2.0 * kPi * cfg.spacing / cfg.wavelength;
    RVec th(cfg.n_elems);
    for (int n = 0; n < cfg.n_elems; ++n) th[n] = c * n * (u_ref - geo.u_br_aoa);
    return PassiveBeam::from_angles(th);
}

std::vector<int> r_set(int a, double d, double lambda, double du, const std::vector<int>& feasible)
{
    require(du != 0.0, ErrorCode::Domain, "r_set: du = 0 has no kernel nulls (coincident UEs)");
    const std::set<int> allowed(feasible.begin(), feasible.end());
    std::set<int> out;
    for (int q = 1; q <= a - 1; ++q) {
        const double cand = q * lambda / (a * d * std::abs(du));
        if (!(cand < 1e9)) continue;
        const int eta = static_cast<int>(std::lround(cand));
        if (allowed.count(eta)) out.insert(eta);
    }
    return {out.begin(), out.end()};
}

double case2_cscc(const Geometry& geo, const SystemConfig& cfg, int eta)
{
    require(geo.n_ues() == 2, ErrorCode::InvalidArgument, "case2_cscc: needs exactly two UEs");
    const int N = cfg.n_elems, a = cfg.n_connected, Nt = cfg.n_tx;
    const double d = cfg.spacing, lam = cfg.wavelength;
    const double du = geo.u_ru_aod[1] - geo.u_ru_aod[0];
    const double k1 = geo.kappa_ru[0], k2 = geo.kappa_ru[1], kb = geo.kappa_br;

    // full-array kernel is the a = N, eta = 1, m0 = 1 special case
    const cplx full_half = dirichlet_sparse(N, 1, d, lam, 0.5 * du, 1).steered;
    const cplx conn_half = dirichlet_sparse(a, eta, d, lam, 0.5 * du, cfg.m0).steered;
    const cplx X = full_half - conn_half;
    const double X2 = std::norm(X);
    const cplx X_tilde = Nt * kb * kb * X2 * std::polar(1.0, 2.0 * std::arg(X));
    const double Xb1 = k1 * k1 * a + kb * kb * k1 * k1 * X2 * Nt;
    const double Xb2 = k2 * k2 * a + kb * kb * k2 * k2 * X2 * Nt;
    const cplx S = dirichlet_sparse(a, eta, d, lam, du, cfg.m0).steered;
    return std::clamp(k1 * k1 * k2 * k2 * std::norm(X_tilde + S) / (Xb1 * Xb2), 0.0, 1.0);
}

namespace {

std::vector<int> argmin_set(const std::vector<int>& etas, const std::function<double(int)>& f)
{
    int best = etas.front();
    double best_v = std::numeric_limits<double>::infinity();
    for (int e : etas) {
        const double v = f(e);
        if (v < best_v) {
            best_v = v;
            best = e;
        }
    }
    return {best};
}

}  // namespace

SparsitySelection proposition1_select(const Geometry& geo, const SystemConfig& cfg, double regime_factor)
{
    require(geo.n_ues() == 2, ErrorCode::InvalidArgument, "proposition1_select: needs exactly two UEs");
    require(regime_factor > 1.0, ErrorCode::InvalidArgument, "proposition1_select: regime_factor must exceed 1");
    const int N = cfg.n_elems, a = cfg.n_connected, Nt = cfg.n_tx;
    const std::vector<int> F = feasible_sparsities(N, a);
    const double du = geo.u_ru_aod[1] - geo.u_ru_aod[0];

    SparsitySelection sel;
    sel.regime_ratio = double(N + a) * double(N + a) * Nt / a * geo.kappa_br * geo.kappa_br;
    if (std::abs(du) <= kCoDirectionalTol) {
        sel.etas = F;
        sel.label = TwoUeCase::Case3;
    } else if (sel.regime_ratio >= regime_factor) {
        sel.etas = F;
        sel.label = TwoUeCase::Subcase2;
    } else if (sel.regime_ratio <= 1.0 / regime_factor) {
        sel.label = TwoUeCase::Subcase1;
        sel.etas = r_set(a, cfg.spacing, cfg.wavelength, du, F);
        if (sel.etas.empty()) {
            sel.fallback = true;
            sel.etas = argmin_set(F, [&](int e) {
                const double s = dirichlet_sparse(a, e, cfg.spacing, cfg.wavelength, du, cfg.m0).value;
                return s * s / (double(a) * a);
            });
        }
    } else {
        sel.label = TwoUeCase::Case2;
        sel.etas = argmin_set(F, [&](int e) { return case2_cscc(geo, cfg, e); });
    }
    return sel;
}

}  // namespace rdars
