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

#include "rdars/scenario.hpp"
#include "rdars/types.hpp"

#include <vector>

namespace rdars {

/// Connected-element placement: a uniform sparse sub-array of the RDARS with
/// `a` elements starting at `m0` and spaced `eta` elements apart.
struct ModeSelection {
    int n = 0;      ///< total RDARS elements
    int a = 0;      ///< connected elements
    int eta = 1;    ///< sparsity level
    int m0 = 1;     ///< reference element (1-based)
    std::vector<int> index_set;  ///< 1-based, strictly increasing, size a
    std::vector<int> a_vec;      ///< length n, 1 at connected elements

    bool connected(int n1) const { return a_vec[static_cast<std::size_t>(n1 - 1)] != 0; }

    /// N x N diagonal mode-switching matrix.
    Eigen::MatrixXd mode_matrix() const;
    /// N x a matrix collecting the columns of mode_matrix() that contain a 1.
    Eigen::MatrixXd selection_matrix() const;
};

ModeSelection make_mode(int n, int a, int eta, int m0 = 1);

/// {1, ..., floor((n-1)/(a-1))}; {1} when a == 1.
std::vector<int> feasible_sparsities(int n, int a);

/// Unit-modulus reflection coefficients. Only the vector is stored; the
/// reflection matrix is diag(conj(phi)), so element n applies e^{j*angle_n}
/// with angle_n = -arg(phi_n).
struct PassiveBeam {
    CVec phi;

    static PassiveBeam ones(int n);
    /// Beam whose reflection matrix applies e^{j*angles[n]} at element n.
    static PassiveBeam from_angles(const RVec& angles);
    RVec angles() const;
    /// Diagonal of the reflection matrix.
    CVec reflection() const { return phi.conjugate(); }
    int size() const { return static_cast<int>(phi.size()); }
};

struct ChannelSet {
    CMat G;                  ///< N x N_t, BS -> RDARS
    std::vector<CVec> h_r;   ///< K vectors of length N, RDARS -> UE k

    int n_elems() const { return static_cast<int>(G.rows()); }
    int n_tx() const { return static_cast<int>(G.cols()); }
    int n_ues() const { return static_cast<int>(h_r.size()); }
};

/// ULA response; entry m (0-based) is exp(j*2*pi*u*m*d/lambda).
CVec steering(int n, double u, double d, double lambda);

/// steering() restricted to the connected elements of `mode`, zero elsewhere.
CVec sparse_steering(int n, double u, double d, double lambda, const ModeSelection& mode);

/// Rank-one LoS channels for the given geometry.
ChannelSet los_channels(const Geometry& geo, const SystemConfig& cfg);

/// Effective channel row of UE k over the stacked [BS antennas; connected
/// elements] transmitter, length N_t + a.
Eigen::RowVectorXcd effective_channel(const ChannelSet& ch, const PassiveBeam& passive, const ModeSelection& mode,
                                      int k);

/// All K effective rows stacked into a K x (N_t + a) matrix.
CMat effective_channels(const ChannelSet& ch, const PassiveBeam& passive, const ModeSelection& mode);

}  // namespace rdars
