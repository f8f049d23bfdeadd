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

#include "rdars/array_channel.hpp"
#include "rdars/types.hpp"

#include <vector>

namespace rdars {

/// Active precoder V = [W; F] (columns v_k) together with the passive beam.
struct BeamformingSolution {
    CMat V;  ///< (N_t + a) x K
    PassiveBeam passive;
    int n_tx = 0;

    auto W() const { return V.topRows(n_tx); }
    auto F() const { return V.bottomRows(V.rows() - n_tx); }
    double power() const { return V.squaredNorm(); }
};

struct RateReport {
    std::vector<double> sinr;
    std::vector<double> rate;  ///< bits/s/Hz per UE
    double sum_rate = 0.0;
    int iterations = 0;
    double wall_time_ms = 0.0;

    double min_rate() const;
};

/// gamma_k = |h_k v_k|^2 / (sum_{i != k} |h_k v_i|^2 + noise) for the rows of H.
std::vector<double> sinr_all(const CMat& H, const CMat& V, double noise);

RateReport sum_rate(const CMat& H, const CMat& V, double noise);

/// MSE of UE k with scalar receiver mu (noise enters unnormalized).
double mse_k(const Eigen::RowVectorXcd& h_k, const CMat& V, int k, cplx mu, double noise);

/// Squared correlation |a b^H|^2 / (|a|^2 |b|^2) of two channel rows.
double cscc(const Eigen::RowVectorXcd& h_a, const Eigen::RowVectorXcd& h_b);

}  // namespace rdars
