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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "rdars/error.hpp"
#include "rdars/metrics.hpp"

using namespace rdars;
using Catch::Approx;

TEST_CASE("sinr hand examples")
{
    CMat H(1, 2);
    H << 2.0, 0.0;
    CMat V(2, 1);
    V << 1.0, 5.0;
    CHECK(sinr_all(H, V, 0.5)[0] == Approx(4.0 / 0.5));

    // |h1 v1|^2 = 4, |h1 v2|^2 = 1, noise 1 -> 2
    CMat H2(2, 2), V2(2, 2);
    H2 << 1, 0, 0, 1;
    V2 << 2, 1, 0, 3;
    CHECK(sinr_all(H2, V2, 1.0)[0] == Approx(2.0));
    CHECK(sinr_all(H2, V2, 1.0)[1] == Approx(9.0));

    V2.col(0).setZero();
    CHECK(sinr_all(H2, V2, 1.0)[0] == 0.0);
    CHECK_THROWS_AS(sinr_all(H2, CMat::Ones(3, 2), 1.0), Error);
    CHECK_THROWS_AS(sinr_all(H2, V2, 0.0), Error);
}

TEST_CASE("sum rate hand examples")
{
    CMat H = CMat::Identity(2, 2);
    CHECK(sum_rate(H, CMat::Zero(2, 2), 1.0).sum_rate == 0.0);
    CMat H1(1, 1), V1(1, 1);
    H1 << 1.0;
    V1 << 1.0;
    CHECK(sum_rate(H1, V1, 1.0).sum_rate == Approx(1.0));
    CMat V2 = std::sqrt(2.0) * CMat::Identity(2, 2);
    const RateReport r = sum_rate(H, V2, 1.0);
    CHECK(r.sum_rate == Approx(2.0 * std::log2(3.0)));
    CHECK(r.sum_rate == Approx(3.1699).epsilon(1e-4));
    CHECK(r.min_rate() == Approx(std::log2(3.0)));
}

TEST_CASE("rates against the loop oracle")
{
    oracle::Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const int K = rng.integer(1, 6), M = rng.integer(1, 10);
        const CMat H = rng.cmat(K, M), V = rng.cmat(M, K);
        const double noise = rng.uniform(0.01, 3.0);
        const RateReport r = sum_rate(H, V, noise);
        double total = 0.0;
        for (int k = 0; k < K; ++k) {
            CHECK(r.sinr[k] == Approx(oracle::sinr(H, V, k, noise)).epsilon(1e-12));
            CHECK(r.rate[k] == Approx(std::log2(1.0 + r.sinr[k])).epsilon(1e-14));
            total += r.rate[k];
        }
        CHECK(std::abs(r.sum_rate - total) < 1e-12);
        CHECK(r.sum_rate == Approx(oracle::sum_rate(H, V, noise)).epsilon(1e-12));

        // a unit-modulus phase on any column leaves every SINR unchanged
        CMat Vp = V;
        Vp.col(0) *= std::exp(cplx(0.0, rng.uniform(-3, 3)));
        const auto s2 = sinr_all(H, Vp, noise);
        for (int k = 0; k < K; ++k) CHECK(s2[k] == Approx(r.sinr[k]).epsilon(1e-12));

        // more signal power for UE 0 and less interference for the others
        // never lowers the sum rate
        CMat Vs = V;
        Vs.col(0) *= 1.0001;
        if (K == 1) CHECK(sum_rate(H, Vs, noise).sum_rate >= r.sum_rate);
    }
}

TEST_CASE("mse hand examples and oracle")
{
    Eigen::RowVectorXcd h(1);
    h << 1.0;
    CMat v(1, 1);
    v << 1.0;
    CHECK(mse_k(h, v, 0, 0.0, 1.0) == 1.0);
    CHECK(mse_k(h, v, 0, 1.0, 0.0) == 0.0);
    CHECK(mse_k(h, v, 0, 0.5, 1.0) == Approx(0.5));

    oracle::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        const int K = rng.integer(1, 5), M = rng.integer(1, 8);
        const CMat H = rng.cmat(K, M), V = rng.cmat(M, K);
        const double noise = rng.uniform(0.1, 2.0);
        for (int k = 0; k < K; ++k) {
            const cplx mu = rng.cnormal();
            CHECK(mse_k(H.row(k), V, k, mu, noise) == Approx(oracle::mse(H, V, k, mu, noise)).epsilon(1e-12));
            CHECK(mse_k(H.row(k), V, k, mu, noise) > 0.0);
        }
    }
}

TEST_CASE("cscc")
{
    Eigen::RowVectorXcd a(2), b(2);
    a << 1, 0;
    b << 1, 1;
    CHECK(cscc(a, b) == Approx(0.5));
    b << 0, 1;
    CHECK(cscc(a, b) == 0.0);
    CHECK(cscc(a, cplx(0.3, -2.0) * a) == Approx(1.0));
    CHECK_THROWS_AS(cscc(a, Eigen::RowVectorXcd::Zero(2)), Error);

    oracle::Rng rng(12);
    for (int t = 0; t < 10000; ++t) {
        const int n = rng.integer(1, 12);
        const Eigen::RowVectorXcd x = rng.cmat(1, n), y = rng.cmat(1, n);
        const double e = cscc(x, y);
        REQUIRE(e >= 0.0);
        REQUIRE(e <= 1.0);
        if (t < 300) {
            CHECK(e == Approx(cscc(y, x)).epsilon(1e-12));
            CHECK(e == Approx(cscc(cplx(2.5, 1.0) * x, 0.1 * y)).epsilon(1e-12));
            CHECK(e == Approx(oracle::cscc(x, y)).epsilon(1e-12));
        }
    }
}
