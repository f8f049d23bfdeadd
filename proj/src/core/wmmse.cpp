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

#include "rdars/wmmse.hpp"

#include "rdars/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace rdars {

CVec update_receivers(const CMat& H, const CMat& V, double noise, double total_power)
{
    require(H.cols() == V.rows() && H.rows() == V.cols(), ErrorCode::InvalidArgument,
            "update_receivers: dimension mismatch");
    const double vpow = V.squaredNorm();
    require(vpow > 0.0, ErrorCode::Numerical, "update_receivers: all-zero precoder");
    const CMat HV = H * V;
    const double noise_term = noise / total_power * vpow;
    CVec mu(H.rows());
    for (Eigen::Index k = 0; k < H.rows(); ++k) mu[k] = HV(k, k) / (HV.row(k).squaredNorm() + noise_term);
    return mu;
}

RVec update_weights(const RVec& mse)
{
    RVec z(mse.size());
    for (Eigen::Index k = 0; k < mse.size(); ++k) {
        if (!(mse[k] > 0.0))
            fail(ErrorCode::Numerical, "update_weights: non-positive MSE for UE " + std::to_string(k));
        z[k] = 1.0 / mse[k];
    }
    return z;
}

RVec mse_all(const CMat& H, const CMat& V, const CVec& mu, double noise)
{
    RVec e(H.rows());
    for (Eigen::Index k = 0; k < H.rows(); ++k) e[k] = mse_k(H.row(k), V, static_cast<int>(k), mu[k], noise);
    return e;
}

double wmmse_objective(const CMat& H, const CMat& V, const CVec& mu, const RVec& zeta, double noise)
{
    const RVec e = mse_all(H, V, mu, noise);
    double f = 0.0;
    for (Eigen::Index k = 0; k < e.size(); ++k) f += zeta[k] * e[k] - std::log(zeta[k]);
    return f;
}

// ---------------------------------------------------------------------------
// precoders

namespace {

/// Data shared by every multiplier value: M = H^H diag(|mu|^2 zeta) H = U L U^H,
/// B = H^H diag(mu zeta), projected Bt = U^H B.
struct PrecoderSystem {
    Eigen::VectorXd lambda;
    CMat U;
    CMat Bt;
    Eigen::VectorXd row_energy;  ///< |Bt.row(i)|^2
    double weight_sum = 0.0;     ///< sum_m |mu_m|^2 zeta_m
    double cutoff = 0.0;

    PrecoderSystem(const CMat& H, const CVec& mu, const RVec& zeta)
    {
        const auto K = H.rows();
        Eigen::VectorXd w(K);
        CVec b(K);
        for (Eigen::Index k = 0; k < K; ++k) {
            w[k] = std::norm(mu[k]) * zeta[k];
            b[k] = mu[k] * zeta[k];
        }
        weight_sum = w.sum();
        const CMat M = H.adjoint() * w.asDiagonal() * H;
        Eigen::SelfAdjointEigenSolver<CMat> es(M);
        require(es.info() == Eigen::Success, ErrorCode::Numerical, "update_precoders: eigensolver failed");
        lambda = es.eigenvalues().cwiseMax(0.0);
        U = es.eigenvectors();
        Bt = U.adjoint() * (H.adjoint() * b.asDiagonal());
        row_energy = Bt.rowwise().squaredNorm();
        cutoff = 1e-12 * std::max(lambda.maxCoeff(), std::numeric_limits<double>::min());
    }

    double power(double rho) const
    {
        const double shift = weight_sum * rho;
        double p = 0.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            const double den = lambda[i] + shift;
            if (rho == 0.0 && lambda[i] <= cutoff) continue;  // pseudo-inverse at rho = 0
            p += row_energy[i] / (den * den);
        }
        return p;
    }

    CMat precoder(double rho) const
    {
        const double shift = weight_sum * rho;
        Eigen::VectorXd scale(lambda.size());
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            scale[i] = (rho == 0.0 && lambda[i] <= cutoff) ? 0.0 : 1.0 / (lambda[i] + shift);
        return U * (scale.asDiagonal() * Bt);
    }
};

}  // namespace

double precoder_power(const CMat& H, const CVec& mu, const RVec& zeta, double rho)
{
    require(rho > 0.0, ErrorCode::InvalidArgument, "precoder_power: rho must be positive");
    const auto K = H.rows();
    double s = 0.0;
    CMat A = CMat::Zero(H.cols(), H.cols());
    CMat B(H.cols(), K);
    for (Eigen::Index m = 0; m < K; ++m) {
        const double w = std::norm(mu[m]) * zeta[m];
        s += w;
        A += w * H.row(m).adjoint() * H.row(m);
        B.col(m) = mu[m] * zeta[m] * H.row(m).adjoint();
    }
    A.diagonal().array() += s * rho;
    return A.ldlt().solve(B).squaredNorm();
}

PrecoderUpdate update_precoders(const CMat& H, const CVec& mu, const RVec& zeta, double total_power,
                                double bisection_tol, int max_doublings)
{
    require(mu.size() == H.rows() && zeta.size() == H.rows(), ErrorCode::InvalidArgument,
            "update_precoders: dimension mismatch");
    require(mu.cwiseAbs().maxCoeff() > 0.0, ErrorCode::Numerical, "update_precoders: all receivers are zero");
    const PrecoderSystem sys(H, mu, zeta);

    PrecoderUpdate out;
    if (sys.power(0.0) <= total_power) {
        out.V = sys.precoder(0.0);
        return out;
    }

    double hi = 1.0;
    int doublings = 0;
    while (sys.power(hi) > total_power) {
        if (++doublings > max_doublings)
            fail(ErrorCode::Numerical, "update_precoders: could not bracket the power multiplier");
        hi *= 2.0;
    }
    // lower end: halve until the constraint is violated again (power -> pinv power > P as rho -> 0)
    double lo = hi;
    for (int i = 0; i < 4000 && sys.power(lo) <= total_power; ++i) lo *= 0.5;
    if (sys.power(lo) <= total_power) lo = 0.0;

    for (int it = 0; it < 400; ++it) {
        const double p_hi = sys.power(hi);
        if (std::abs(p_hi - total_power) <= bisection_tol) break;
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
        if (!(mid > lo && mid < hi)) break;
        if (sys.power(mid) > total_power) lo = mid;
        else hi = mid;
        ++out.bisection_steps;
    }
    // the upper end always satisfies the constraint
    out.rho = hi;
    out.V = sys.precoder(hi);
    return out;
}

// ---------------------------------------------------------------------------
// passive beam

double PhaseQuadratic::value(const CVec& phi) const
{
    return std::real(phi.dot(C * phi)) + 2.0 * std::real(beta.dot(phi));
}

PhaseQuadratic build_phase_quadratic(const ChannelSet& ch, const ModeSelection& mode, const CMat& W, const CMat& F,
                                     const CVec& mu, const RVec& zeta)
{
    const int N = ch.n_elems(), K = ch.n_ues();
    require(W.rows() == ch.n_tx() && F.rows() == mode.a && W.cols() == K && F.cols() == K && mode.n == N,
            ErrorCode::InvalidArgument, "build_phase_quadratic: dimension mismatch");

    // Hr^* columns: conj(h_r,k) restricted to reflecting elements
    CMat Hc(N, K);
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < N; ++n)
            Hc(n, k) = mode.a_vec[static_cast<std::size_t>(n)] ? cplx{} : std::conj(ch.h_r[static_cast<std::size_t>(k)][n]);

    const CMat GW = ch.G * W;  // N x K
    // c(k, m) = h_r,k^H Atilde f_m
    CMat Cdir(K, K);
    for (int k = 0; k < K; ++k)
        for (int m = 0; m < K; ++m) {
            cplx s{};
            for (int i = 0; i < mode.a; ++i)
                s += std::conj(ch.h_r[static_cast<std::size_t>(k)][mode.index_set[static_cast<std::size_t>(i)] - 1]) * F(i, m);
            Cdir(k, m) = s;
        }

    Eigen::VectorXd wk(K);
    for (int k = 0; k < K; ++k) wk[k] = zeta[k] * std::norm(mu[k]);

    PhaseQuadratic q;
    // C = (sum_k w_k conj(h_k) h_k^T) o (GW GW^H) over reflecting elements
    const CMat R = Hc * wk.asDiagonal() * Hc.adjoint();
    q.C = R.cwiseProduct(GW * GW.adjoint());
    q.beta = CVec::Zero(N);
    for (int k = 0; k < K; ++k) {
        const CVec t = wk[k] * (GW * Cdir.row(k).adjoint()) - zeta[k] * std::conj(mu[k]) * GW.col(k);
        q.beta += Hc.col(k).cwiseProduct(t);
    }
    return q;
}

LiftedPhase LiftedPhase::lift(const PassiveBeam& b)
{
    LiftedPhase l;
    l.p.resize(b.phi.size() + 1);
    l.p.head(b.phi.size()) = b.phi;
    l.p[b.phi.size()] = 1.0;
    return l;
}

PassiveBeam LiftedPhase::unlift() const
{
    const auto N = p.size() - 1;
    PassiveBeam b;
    b.phi.resize(N);
    const cplx ref = q();
    for (Eigen::Index n = 0; n < N; ++n) b.phi[n] = std::polar(1.0, std::arg(p[n] / ref));
    return b;
}

CMat lifted_matrix(const CMat& C, const CVec& beta)
{
    const auto N = C.rows();
    CMat D(N + 1, N + 1);
    D.topLeftCorner(N, N) = -C;
    D.topRightCorner(N, 1) = -beta;
    D.bottomLeftCorner(1, N) = -beta.adjoint();
    D(N, N) = 0.0;
    return D;
}

double lifted_shift(const CMat& D, double nu_floor)
{
    double lower = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < D.rows(); ++i) {
        double radius = 0.0;
        for (Eigen::Index j = 0; j < D.cols(); ++j)
            if (j != i) radius += std::abs(D(i, j));
        lower = std::min(lower, std::real(D(i, i)) - radius);
    }
    double nu = std::max(0.0, -lower) + 1e-6 * D.norm();
    nu = std::max(nu, nu_floor);
    if (!(nu > 0.0)) nu = 1.0;  // D == 0: any positive shift keeps p fixed
    return nu;
}

PowerIterationResult power_iteration(const CMat& C, const CVec& beta, double nu_floor, double tol, int max_iters,
                                     const LiftedPhase& p0)
{
    const auto N = C.rows();
    require(C.cols() == N && beta.size() == N && p0.p.size() == N + 1, ErrorCode::InvalidArgument,
            "power_iteration: dimension mismatch");
    CMat Dn = lifted_matrix(C, beta);
    PowerIterationResult r;
    r.nu = lifted_shift(Dn, nu_floor);
    Dn.diagonal().array() += r.nu;

    auto objective = [&](const CVec& p) { return std::real(p.dot(Dn * p)); };

    CVec p = p0.p;
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = std::polar(1.0, std::arg(p[i]));
    double f = objective(p);
    r.objective.push_back(f);
    CVec best = p;
    double best_f = f;

    for (int it = 0; it < max_iters; ++it) {
        const CVec y = Dn * p;
        CVec next(p.size());
        for (Eigen::Index i = 0; i < p.size(); ++i) next[i] = std::abs(y[i]) > 0.0 ? y[i] / std::abs(y[i]) : p[i];
        const double step = (next - p).cwiseAbs().maxCoeff();
        p = std::move(next);
        f = objective(p);
        r.objective.push_back(f);
        ++r.iterations;
        if (f > best_f) {
            best_f = f;
            best = p;
        }
        if (step < tol) {
            r.converged = true;
            break;
        }
    }
    r.lifted.p = best;
    r.passive = r.lifted.unlift();
    return r;
}

// ---------------------------------------------------------------------------
// alternating optimisation

CMat zf_init(const CMat& H, double total_power)
{
    const auto K = H.rows(), M = H.cols();
    CMat V;
    bool zf = K <= M;
    if (zf) {
        Eigen::CompleteOrthogonalDecomposition<CMat> cod(H);
        zf = cod.rank() == K;
        if (zf) V = cod.pseudoInverse();
    }
    if (!zf) V = H.adjoint();
    Eigen::Index live = 0;
    for (Eigen::Index k = 0; k < K; ++k) live += V.col(k).norm() > 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        const double n = V.col(k).norm();
        if (n > 0.0) V.col(k) *= std::sqrt(total_power / static_cast<double>(live)) / n;
    }
    return V;
}

FixedEtaResult solve_fixed_eta(const ChannelSet& ch, const ModeSelection& mode, const SystemConfig& cfg)
{
    const int K = ch.n_ues(), Nt = ch.n_tx();
    const double noise = cfg.noise_power, P = cfg.total_power;

    FixedEtaResult r;
    r.mode = mode;
    r.solution.n_tx = Nt;
    r.solution.passive = PassiveBeam::ones(ch.n_elems());
    CMat H = effective_channels(ch, r.solution.passive, mode);
    r.solution.V = zf_init(H, P);
    r.mu = CVec::Zero(K);
    r.zeta = RVec::Ones(K);

    r.objective_trace.push_back(wmmse_objective(H, r.solution.V, r.mu, r.zeta, noise));
    double rate = sum_rate(H, r.solution.V, noise).sum_rate;
    r.sum_rate_trace.push_back(rate);

    int it = 0;
    for (; it < cfg.max_outer_iters; ++it) {
        r.mu = update_receivers(H, r.solution.V, noise, P);
        r.objective_trace.push_back(wmmse_objective(H, r.solution.V, r.mu, r.zeta, noise));

        r.zeta = update_weights(mse_all(H, r.solution.V, r.mu, noise));
        r.objective_trace.push_back(wmmse_objective(H, r.solution.V, r.mu, r.zeta, noise));

        PrecoderUpdate pu = update_precoders(H, r.mu, r.zeta, P, cfg.bisection_tol, cfg.max_inner_iters);
        r.solution.V = std::move(pu.V);
        r.rho = pu.rho;
        r.objective_trace.push_back(wmmse_objective(H, r.solution.V, r.mu, r.zeta, noise));

        if (mode.a < mode.n) {
            const PhaseQuadratic pq =
                build_phase_quadratic(ch, mode, r.solution.W(), r.solution.F(), r.mu, r.zeta);
            const PowerIterationResult pi = power_iteration(pq.C, pq.beta, cfg.shift_nu, 1e-10, cfg.max_inner_iters,
                                                            LiftedPhase::lift(r.solution.passive));
            r.solution.passive = pi.passive;
            H = effective_channels(ch, r.solution.passive, mode);
        }
        r.objective_trace.push_back(wmmse_objective(H, r.solution.V, r.mu, r.zeta, noise));

        const double next = sum_rate(H, r.solution.V, noise).sum_rate;
        r.sum_rate_trace.push_back(next);
        const double gain = next - rate;
        rate = next;
        if (gain <= cfg.conv_threshold * std::max(std::abs(rate), std::numeric_limits<double>::min())) {
            r.converged = true;
            ++it;
            break;
        }
    }
    r.report = sum_rate(H, r.solution.V, noise);
    r.report.iterations = it;
    return r;
}

SparsitySearchResult sparsity_search(const std::vector<int>& feasible, const InnerSolver& inner)
{
    require(!feasible.empty(), ErrorCode::InvalidArgument, "sparsity_search: empty sparsity set");
    SparsitySearchResult out;
    std::vector<FixedEtaResult> runs;
    runs.reserve(feasible.size());
    for (int eta : feasible) {
        runs.push_back(inner(eta));
        out.etas.push_back(eta);
        out.sum_rates.push_back(runs.back().report.sum_rate);
    }
    const double top = *std::max_element(out.sum_rates.begin(), out.sum_rates.end());
    // smallest level within the tie tolerance of the maximum
    std::size_t pick = 0;
    std::vector<std::size_t> order(feasible.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return out.etas[x] < out.etas[y]; });
    for (std::size_t i : order) {
        if (out.sum_rates[i] >= top - kSparsityTieRel * std::abs(top)) {
            pick = i;
            break;
        }
    }
    out.eta_opt = out.etas[pick];
    out.best = std::move(runs[pick]);
    return out;
}

namespace {

WaResult to_wa_result(SparsitySearchResult&& s, double elapsed_ms)
{
    WaResult w;
    w.solution = std::move(s.best.solution);
    w.mode = std::move(s.best.mode);
    w.report = std::move(s.best.report);
    w.report.wall_time_ms = elapsed_ms;
    w.converged = s.best.converged;
    w.etas = std::move(s.etas);
    w.sum_rates = std::move(s.sum_rates);
    return w;
}

WaResult solve_over(const Geometry& geo, const SystemConfig& cfg, const std::vector<int>& etas)
{
    validate_config(cfg);
    require(geo.n_ues() == cfg.n_ues, ErrorCode::InvalidArgument, "wa_solve: geometry has " +
                                                                       std::to_string(geo.n_ues()) +
                                                                       " UEs but n_ues = " + std::to_string(cfg.n_ues));
    const auto t0 = std::chrono::steady_clock::now();
    const ChannelSet ch = los_channels(geo, cfg);
    auto inner = [&](int eta) {
        return solve_fixed_eta(ch, make_mode(cfg.n_elems, cfg.n_connected, eta, cfg.m0), cfg);
    };
    SparsitySearchResult s = sparsity_search(etas, inner);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return to_wa_result(std::move(s), ms);
}

}  // namespace

WaResult wa_solve(const Geometry& geo, const SystemConfig& cfg)
{
    return solve_over(geo, cfg, feasible_sparsities(cfg.n_elems, cfg.n_connected));
}

WaResult wa_solve_fixed(const Geometry& geo, const SystemConfig& cfg, int eta)
{
    return solve_over(geo, cfg, {eta});
}

}  // namespace rdars
