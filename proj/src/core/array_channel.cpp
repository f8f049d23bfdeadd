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

#include "rdars/array_channel.hpp"

#include "rdars/error.hpp"

#include <cmath>

namespace rdars {

Eigen::MatrixXd ModeSelection::mode_matrix() const
{
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int z : index_set) A(z - 1, z - 1) = 1.0;
    return A;
}

Eigen::MatrixXd ModeSelection::selection_matrix() const
{
    Eigen::MatrixXd At = Eigen::MatrixXd::Zero(n, a);
    for (int m = 0; m < a; ++m) At(index_set[static_cast<std::size_t>(m)] - 1, m) = 1.0;
    return At;
}

ModeSelection make_mode(int n, int a, int eta, int m0)
{
    require(n >= 1 && a >= 1 && a <= n, ErrorCode::InvalidArgument,
            "make_mode: need 1 <= a <= n (a=" + std::to_string(a) + ", n=" + std::to_string(n) + ")");
    require(eta >= 1, ErrorCode::InvalidArgument, "make_mode: eta must be >= 1");
    require(m0 >= 1, ErrorCode::InvalidArgument, "make_mode: m0 must be >= 1");
    const long last = static_cast<long>(m0) + static_cast<long>(a - 1) * eta;
    if (last > n)
        fail(ErrorCode::Infeasible, "make_mode: sparsity " + std::to_string(eta) + " needs element " +
                                        std::to_string(last) + " but the array has " + std::to_string(n));
    ModeSelection m;
    m.n = n;
    m.a = a;
    m.eta = eta;
    m.m0 = m0;
    m.a_vec.assign(static_cast<std::size_t>(n), 0);
    m.index_set.reserve(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) {
        const int z = m0 + i * eta;
        m.index_set.push_back(z);
        m.a_vec[static_cast<std::size_t>(z - 1)] = 1;
    }
    return m;
}

std::vector<int> feasible_sparsities(int n, int a)
{
    require(a >= 1, ErrorCode::InvalidArgument, "feasible_sparsities: a must be >= 1");
    require(a <= n, ErrorCode::InvalidArgument, "feasible_sparsities: a exceeds n");
    if (a == 1) return {1};
    const int top = (n - 1) / (a - 1);
    std::vector<int> out;
    for (int e = 1; e <= top; ++e) out.push_back(e);
    return out;
}

PassiveBeam PassiveBeam::ones(int n) { return {CVec::Ones(n)}; }

PassiveBeam PassiveBeam::from_angles(const RVec& angles)
{
    PassiveBeam b;
    b.phi.resize(angles.size());
    for (Eigen::Index i = 0; i < angles.size(); ++i) b.phi[i] = std::polar(1.0, -angles[i]);
    return b;
}

RVec PassiveBeam::angles() const
{
    RVec th(phi.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) th[i] = -std::arg(phi[i]);
    return th;
}

CVec steering(int n, double u, double d, double lambda)
{
    require(n >= 1, ErrorCode::InvalidArgument, "steering: n must be >= 1");
    CVec b(n);
    const double k = 2.0 * kPi * u * d / lambda;
    for (int m = 0; m < n; ++m) b[m] = std::polar(1.0, k * m);
    return b;
}

CVec sparse_steering(int n, double u, double d, double lambda, const ModeSelection& mode)
{
    require(mode.n == n, ErrorCode::InvalidArgument,
            "sparse_steering: mode built for N=" + std::to_string(mode.n) + ", requested " + std::to_string(n));
    CVec b = steering(n, u, d, lambda);
    for (int i = 0; i < n; ++i)
        if (!mode.a_vec[static_cast<std::size_t>(i)]) b[i] = 0.0;
    return b;
}

ChannelSet los_channels(const Geometry& geo, const SystemConfig& cfg)
{
    const int N = cfg.n_elems, Nt = cfg.n_tx;
    ChannelSet ch;
    ch.G = geo.kappa_br * steering(N, geo.u_br_aoa, cfg.spacing, cfg.wavelength) *
           steering(Nt, geo.u_br_aod, cfg.spacing, cfg.wavelength).adjoint();
    ch.h_r.reserve(geo.u_ru_aod.size());
    for (std::size_t k = 0; k < geo.u_ru_aod.size(); ++k)
        ch.h_r.push_back(geo.kappa_ru[k] * steering(N, geo.u_ru_aod[k], cfg.spacing, cfg.wavelength));
    return ch;
}

Eigen::RowVectorXcd effective_channel(const ChannelSet& ch, const PassiveBeam& passive, const ModeSelection& mode,
                                      int k)
{
    require(k >= 0 && k < ch.n_ues(), ErrorCode::InvalidArgument,
            "effective_channel: UE index " + std::to_string(k) + " out of range");
    const int N = ch.n_elems();
    require(mode.n == N && passive.size() == N && ch.h_r[static_cast<std::size_t>(k)].size() == N,
            ErrorCode::InvalidArgument, "effective_channel: dimension mismatch");
    const CVec& hr = ch.h_r[static_cast<std::size_t>(k)];

    // h_r^H (I - A) diag(conj(phi)) G, computed without forming the diagonals
    CVec t(N);
    for (int n = 0; n < N; ++n)
        t[n] = mode.a_vec[static_cast<std::size_t>(n)] ? cplx{} : std::conj(hr[n]) * std::conj(passive.phi[n]);

    Eigen::RowVectorXcd row(ch.n_tx() + mode.a);
    row.head(ch.n_tx()) = t.transpose() * ch.G;
    for (int m = 0; m < mode.a; ++m) row[ch.n_tx() + m] = std::conj(hr[mode.index_set[static_cast<std::size_t>(m)] - 1]);
    return row;
}

CMat effective_channels(const ChannelSet& ch, const PassiveBeam& passive, const ModeSelection& mode)
{
    CMat H(ch.n_ues(), ch.n_tx() + mode.a);
    for (int k = 0; k < ch.n_ues(); ++k) H.row(k) = effective_channel(ch, passive, mode, k);
    return H;
}

}  // namespace rdars
