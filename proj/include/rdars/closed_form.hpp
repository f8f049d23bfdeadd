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

// Closed-form designs for the single-UE and two-UE special cases under LoS.

#include "rdars/array_channel.hpp"
#include "rdars/metrics.hpp"
#include "rdars/scenario.hpp"

#include <array>
#include <string>
#include <vector>

namespace rdars {

/// Dirichlet kernel of the connected sub-array evaluated at a spatial
/// frequency difference: value = sin(a*pi*d*eta*du/lambda)/sin(pi*d*eta*du/lambda),
/// phase = 2*pi*d/lambda*(m0 - 1 + (a-1)*eta/2)*du and steered = value*e^{j*phase},
/// which equals sum_{m<a} e^{j*2*pi*d/lambda*(m0-1+m*eta)*du}.
struct DirichletKernel {
    double value = 0.0;
    double phase = 0.0;
    cplx steered;
};

DirichletKernel dirichlet_sparse(int a, int eta, double d, double lambda, double du, int m0 = 1);

/// Phased sums of e^{j(angle_n + 2*pi*d/lambda*(n-1)*du)} over the full
/// array (`full`) and over the connected elements of `mode` (`connected`).
struct SteeredSums {
    cplx full;
    cplx connected;
};

SteeredSums steered_sums(const ModeSelection& mode, double d, double lambda, const PassiveBeam& passive, double du);

struct SingleUeSolution {
    PassiveBeam passive;
    CVec w;   ///< length N_t
    CVec f;   ///< length a
    double p_bs = 0.0;   ///< power on the BS precoder
    double p_rdars = 0.0;
    double gamma_max = 0.0;

    BeamformingSolution as_solution() const;
    /// The split written as amplitudes: {sqrt(p_bs), sqrt(p_rdars)} scaled
    /// the way the textbook expressions print them.
    std::array<double, 2> printed_split(const SystemConfig& cfg, double kappa_br) const;
};

/// Optimal phases, precoders and power split for K = 1.
SingleUeSolution single_ue_solution(const Geometry& geo, const SystemConfig& cfg, const ModeSelection& mode);

/// gamma_max = kappa_ru^2 P (kappa_br^2 (N-a)^2 N_t + a) / noise.
double single_ue_snr_bound(const Geometry& geo, const SystemConfig& cfg);

enum class LinearScheme { MRT, ZF, MMSE };

LinearScheme parse_linear_scheme(const std::string& name);

/// Two-UE SINRs for the linear schemes given per-UE powers p, channel norms
/// beta and the squared correlation eps.
std::array<double, 2> two_ue_sinr(LinearScheme scheme, std::array<double, 2> p, std::array<double, 2> beta,
                                  double eps, double noise);

enum class TwoUeCase { Subcase1, Subcase2, Case2, Case3 };

const char* to_string(TwoUeCase c);

/// Intermediate quantities of the two-UE correlation analysis.
struct TwoUeAnalysis {
    double delta_u = 0.0;                ///< u_ru,2 - u_ru,1
    std::array<double, 2> delta_u_k{};   ///< u_br^AoA - u_ru,k
    double u_ref = 0.0;                  ///< midpoint of the two UE frequencies
    std::array<cplx, 2> xi{};
    std::array<double, 2> beta{};
    std::array<cplx, 2> d{};             ///< sqrt(N_t) kappa_br kappa_k (D_N - S~)
    cplx s12;                            ///< kappa_1 kappa_2 * steered kernel at delta_u
    double eps = 0.0;
    /// |D1 D2^*| / |S12|: small in the regime where the direct link dominates.
    double direct_dominance = 0.0;
};

TwoUeAnalysis analyze_two_ue(const Geometry& geo, const SystemConfig& cfg, const ModeSelection& mode,
                             const PassiveBeam& passive);

/// Closed-form squared correlation of the two effective channels.
double cscc_closed(const Geometry& geo, const SystemConfig& cfg, const ModeSelection& mode,
                   const PassiveBeam& passive);

/// Passive beam steering the reflection towards u_ref (midpoint of both UEs).
PassiveBeam reference_beam(const Geometry& geo, const SystemConfig& cfg);

/// Sparsity levels that place a null of the connected-array kernel on du:
/// {round(q*lambda/(a*d*|du|)) : q = 1..a-1} intersected with `feasible`.
std::vector<int> r_set(int a, double d, double lambda, double du, const std::vector<int>& feasible);

/// Correlation under the midpoint reference beam, from the X-function form.
double case2_cscc(const Geometry& geo, const SystemConfig& cfg, int eta);

/// |du| at or below this is treated as co-directional UEs.
inline constexpr double kCoDirectionalTol = 1e-12;

struct SparsitySelection {
    std::vector<int> etas;
    TwoUeCase label = TwoUeCase::Case3;
    double regime_ratio = 0.0;  ///< (N+a)^2 N_t / a * kappa_br^2
    bool fallback = false;      ///< empty R set, chose argmin |S|^2/a^2 instead
};

SparsitySelection proposition1_select(const Geometry& geo, const SystemConfig& cfg, double regime_factor);

}  // namespace rdars
