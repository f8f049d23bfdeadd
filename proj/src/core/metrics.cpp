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

#include "rdars/metrics.hpp"

#include "rdars/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdars {

double RateReport::min_rate() const
{
    if (rate.empty()) return 0.0;
    return *std::min_element(rate.begin(), rate.end());
}

std::vector<double> sinr_all(const CMat& H, const CMat& V, double noise)
{
    require(noise > 0.0, ErrorCode::InvalidArgument, "sinr_all: noise power must be positive");
    require(H.cols() == V.rows() && H.rows() == V.cols(), ErrorCode::InvalidArgument,
            "sinr_all: H is " + std::to_string(H.rows()) + "x" + std::to_string(H.cols()) + " but V is " +
                std::to_string(V.rows()) + "x" + std::to_string(V.cols()));
    const CMat HV = H * V;
    const auto K = H.rows();
    std::vector<double> g(static_cast<std::size_t>(K));
    for (Eigen::Index k = 0; k < K; ++k) {
        double interf = 0.0;
        for (Eigen::Index i = 0; i < K; ++i)
            if (i != k) interf += std::norm(HV(k, i));
        g[static_cast<std::size_t>(k)] = std::norm(HV(k, k)) / (interf + noise);
    }
    return g;
}

RateReport sum_rate(const CMat& H, const CMat& V, double noise)
{
    RateReport r;
    r.sinr = sinr_all(H, V, noise);
    r.rate.reserve(r.sinr.size());
    for (double g : r.sinr) {
        r.rate.push_back(std::log2(1.0 + g));
        r.sum_rate += r.rate.back();
    }
    return r;
}

double mse_k(const Eigen::RowVectorXcd& h_k, const CMat& V, int k, cplx mu, double noise)
{
    require(h_k.size() == V.rows() && k >= 0 && k < V.cols(), ErrorCode::InvalidArgument, "mse_k: dimension mismatch");
    const Eigen::RowVectorXcd hv = h_k * V;
    return 1.0 - 2.0 * std::real(std::conj(mu) * hv[k]) + std::norm(mu) * (hv.squaredNorm() + noise);
}

double cscc(const Eigen::RowVectorXcd& h_a, const Eigen::RowVectorXcd& h_b)
{
    require(h_a.size() == h_b.size(), ErrorCode::InvalidArgument, "cscc: length mismatch");
    const double na = h_a.squaredNorm(), nb = h_b.squaredNorm();
    require(na > 0.0 && nb > 0.0, ErrorCode::Domain, "cscc: zero-norm channel");
    const double e = std::norm(h_a.dot(h_b)) / (na * nb);
    return std::clamp(e, 0.0, 1.0);
}

}  // namespace rdars
