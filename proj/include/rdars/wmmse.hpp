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

#pragma once

// WMMSE-based alternating optimisation (WA) of the active precoder, the
// passive reflection phases and the sparsity level of the connected array.

#include "rdars/array_channel.hpp"
#include "rdars/metrics.hpp"
#include "rdars/scenario.hpp"

#include <functional>
#include <vector>

namespace rdars {

/// Relative sum-rate difference below which two sparsity levels are treated
/// as tied (the smaller level wins).
inline constexpr double kSparsityTieRel = 1e-6;

/// Scalar MMSE receivers with the noise term normalised by the precoder power:
/// mu_k = h_k v_k / (sum_m |h_k v_m|^2 + noise * |V|_F^2 / P).
CVec update_receivers(const CMat& H, const CMat& V, double noise, double total_power);

/// zeta_k = 1 / e_k.
RVec update_weights(const RVec& mse);

/// Per-UE MSE for every row of H.
RVec mse_all(const CMat& H, const CMat& V, const CVec& mu, double noise);

/// sum_k (zeta_k e_k - ln zeta_k).
double wmmse_objective(const CMat& H, const CMat& V, const CVec& mu, const RVec& zeta, double noise);

struct PrecoderUpdate {
    CMat V;
    double rho = 0.0;
    int bisection_steps = 0;
};

/// Weighted-MMSE precoders with the Lagrange multiplier of the total power
/// constraint found by bisection. `max_doublings` bounds the bracket growth.
PrecoderUpdate update_precoders(const CMat& H, const CVec& mu, const RVec& zeta, double total_power,
                                double bisection_tol, int max_doublings);

/// Power of the weighted-MMSE precoder for a given multiplier. Exposed so the
/// monotonicity in rho can be checked directly.
double precoder_power(const CMat& H, const CVec& mu, const RVec& zeta, double rho);

/// Quadratic model phi^H C phi + 2 Re(beta^H phi) of the phi-dependent part of
/// the weighted MSE sum.
struct PhaseQuadratic {
    CMat C;     ///< N x N Hermitian PSD
    CVec beta;  ///< length N

    double value(const CVec& phi) const;
};

PhaseQuadratic build_phase_quadratic(const ChannelSet& ch, const ModeSelection& mode, const CMat& W, const CMat& F,
                                     const CVec& mu, const RVec& zeta);

/// Lifted phase vector p = [phi; q], all entries unit-modulus.
struct LiftedPhase {
    CVec p;

    static LiftedPhase lift(const PassiveBeam& b);
    cplx q() const { return p[p.size() - 1]; }
    /// phi = e^{j arg(p[0:N] / p[N])}
    PassiveBeam unlift() const;
};

struct PowerIterationResult {
    PassiveBeam passive;
    LiftedPhase lifted;
    std::vector<double> objective;  ///< p^H (D + nu I) p per iterate, starting with p0
    double nu = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Shift that makes D + nu I positive definite, from Gershgorin discs.
double lifted_shift(const CMat& D, double nu_floor);

/// D = [-C, -beta; -beta^H, 0].
CMat lifted_matrix(const CMat& C, const CVec& beta);

/// Maximises p^H D p over unit-modulus p with the fixed-point update
/// p <- e^{j arg((D + nu I) p)}. Returns the best iterate.
PowerIterationResult power_iteration(const CMat& C, const CVec& beta, double nu_floor, double tol, int max_iters,
                                     const LiftedPhase& p0);

/// Zero-forcing columns with equal per-UE power summing to `total_power`;
/// matched-filter columns when the channel rows are rank deficient.
CMat zf_init(const CMat& H, double total_power);

struct FixedEtaResult {
    BeamformingSolution solution;
    ModeSelection mode;
    RateReport report;
    CVec mu;
    RVec zeta;
    double rho = 0.0;
    bool converged = false;
    /// Surrogate value after every sub-update: the initial value, then
    /// receivers, weights, precoders, passive for each outer iteration.
    std::vector<double> objective_trace;
    std::vector<double> sum_rate_trace;  ///< initial point plus one entry per outer iteration
};

/// Runs the alternating updates at a fixed sparsity level from the ZF start.
FixedEtaResult solve_fixed_eta(const ChannelSet& ch, const ModeSelection& mode, const SystemConfig& cfg);

struct SparsitySearchResult {
    int eta_opt = 1;
    FixedEtaResult best;
    std::vector<int> etas;
    std::vector<double> sum_rates;
};

using InnerSolver = std::function<FixedEtaResult(int eta)>;

/// Exhaustive search over `feasible`; ties go to the smaller level.
SparsitySearchResult sparsity_search(const std::vector<int>& feasible, const InnerSolver& inner);

struct WaResult {
    BeamformingSolution solution;
    ModeSelection mode;
    RateReport report;
    bool converged = false;
    std::vector<int> etas;
    std::vector<double> sum_rates;  ///< per candidate sparsity level
};

WaResult wa_solve(const Geometry& geo, const SystemConfig& cfg);

/// Same solver restricted to one sparsity level.
WaResult wa_solve_fixed(const Geometry& geo, const SystemConfig& cfg, int eta);

}  // namespace rdars
