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
#include "rdars/scenario.hpp"

#include <cstdio>
#include <fstream>

using namespace rdars;
using Catch::Approx;

TEST_CASE("path_gain reference values")
{
    CHECK(path_gain(1.0, 61.4, 2.0) == Approx(8.511380382e-4).epsilon(1e-9));
    CHECK(path_gain(1.0, 0.0, 3.7) == 1.0);
    CHECK(path_gain(10.0, 61.4, 2.0) == Approx(8.511380382e-5).epsilon(1e-9));
    CHECK(path_gain(37.0, 61.4, 2.8) == Approx(oracle::path_gain(37.0, 61.4, 2.8)).epsilon(1e-14));
}

TEST_CASE("path_gain domain")
{
    CHECK_THROWS_AS(path_gain(0.5, 61.4, 2.0), Error);
    try {
        path_gain(0.99, 0.0, 2.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Domain);
    }
    CHECK_THROWS_AS(path_gain(2.0, 0.0, 0.0), Error);
}

TEST_CASE("path_gain decreases with distance and exponent")
{
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double d = rng.uniform(1.01, 500.0), e = rng.uniform(1.5, 4.0);
        CHECK(path_gain(d * 1.1, 61.4, e) < path_gain(d, 61.4, e));
        CHECK(path_gain(d, 61.4, e + 0.1) < path_gain(d, 61.4, e));
    }
}

TEST_CASE("spatial frequencies of simple layouts")
{
    SystemConfig cfg;
    const Vec3 bs(0, 0, 15), ris(50, 30, 15);
    SECTION("broadside and endfire")
    {
        const Geometry g = derive_geometry(bs, ris, {ris + Vec3(0, 10, 0), ris + Vec3(10, 0, 0)}, cfg);
        CHECK(std::abs(g.u_ru_aod[0]) < 1e-15);
        CHECK(g.u_ru_aod[1] == Approx(1.0));
    }
    SECTION("reference layout distances and angles")
    {
        const Geometry g = derive_geometry(bs, ris, {Vec3(100, 0, 1.5)}, cfg);
        const double dist = std::sqrt(50.0 * 50.0 + 30.0 * 30.0);
        CHECK(dist == Approx(58.3095).epsilon(1e-5));
        CHECK(g.kappa_br == Approx(oracle::path_gain(dist, 61.4, 2.0)).epsilon(1e-14));
        CHECK(g.u_br_aod == Approx(50.0 / dist));
        CHECK(g.u_br_aoa == Approx(-50.0 / dist));
        const Vec3 ru = Vec3(100, 0, 1.5) - ris;
        CHECK(g.u_ru_aod[0] == Approx(ru.x() / ru.norm()));
        CHECK(g.kappa_ru[0] == Approx(oracle::path_gain(ru.norm(), 61.4, 2.8)).epsilon(1e-14));
    }
    SECTION("u values stay inside [-1, 1]")
    {
        oracle::Rng rng(5);
        for (int i = 0; i < 500; ++i) {
            const Vec3 ue(rng.uniform(-300, 300), rng.uniform(-300, 300), rng.uniform(0, 30));
            if ((ue - ris).norm() < 1.0) continue;
            const Geometry g = derive_geometry(bs, ris, {ue}, cfg);
            CHECK(std::abs(g.u_ru_aod[0]) <= 1.0);
            CHECK(g.kappa_ru[0] > 0.0);
        }
    }
}

TEST_CASE("rotation about the array axis leaves u unchanged")
{
    SystemConfig cfg;
    const Vec3 bs(0, 0, 15), ris(50, 30, 15), ue(110, -12, 1.5);
    const Geometry g0 = derive_geometry(bs, ris, {ue}, cfg);
    for (double ang : {0.3, 1.1, 2.7}) {
        const Eigen::Matrix3d R = Eigen::AngleAxisd(ang, Vec3::UnitX()).toRotationMatrix();
        const Geometry g1 = derive_geometry(R * bs, R * ris, {R * ue}, cfg);
        CHECK(g1.u_ru_aod[0] == Approx(g0.u_ru_aod[0]).margin(1e-14));
        CHECK(g1.u_br_aoa == Approx(g0.u_br_aoa).margin(1e-14));
        CHECK(g1.u_br_aod == Approx(g0.u_br_aod).margin(1e-14));
    }
}

TEST_CASE("derive_geometry errors and determinism")
{
    SystemConfig cfg;
    CHECK_THROWS_AS(derive_geometry(Vec3(1, 1, 1), Vec3(1, 1, 1), {Vec3(10, 0, 0)}, cfg), Error);
    CHECK_THROWS_AS(derive_geometry(Vec3(0, 0, 0), Vec3(10, 0, 0), {Vec3(10.5, 0, 0)}, cfg), Error);
    const Geometry a = derive_geometry(Vec3(0, 0, 15), Vec3(50, 30, 15), {Vec3(90, 7, 1.5)}, cfg);
    const Geometry b = derive_geometry(Vec3(0, 0, 15), Vec3(50, 30, 15), {Vec3(90, 7, 1.5)}, cfg);
    CHECK(a.u_ru_aod[0] == b.u_ru_aod[0]);
    CHECK(a.kappa_ru[0] == b.kappa_ru[0]);
}

TEST_CASE("validate_config rejects broken invariants")
{
    SystemConfig c;
    CHECK_NOTHROW(validate_config(c));
    auto rejects = [](auto mutate) {
        SystemConfig x;
        mutate(x);
        CHECK_THROWS_AS(validate_config(x), Error);
    };
    rejects([](SystemConfig& x) { x.n_connected = x.n_elems + 1; });
    rejects([](SystemConfig& x) { x.n_connected = 0; });
    rejects([](SystemConfig& x) { x.n_ues = 0; });
    rejects([](SystemConfig& x) { x.spacing = 0.0; });
    rejects([](SystemConfig& x) { x.total_power = -1.0; });
    rejects([](SystemConfig& x) { x.noise_power = 0.0; });
    rejects([](SystemConfig& x) { x.wavelength *= 1.001; });
    rejects([](SystemConfig& x) { x.shift_nu = -1.0; });
}

TEST_CASE("default scenario carries the reference deployment")
{
    const Scenario sc = default_scenario();
    const SystemConfig& c = sc.config;
    CHECK(c.n_tx == 32);
    CHECK(c.n_elems == 128);
    CHECK(c.n_connected == 20);
    CHECK(c.n_ues == 20);
    CHECK(c.carrier_freq == 28e9);
    CHECK(c.spacing == Approx(c.wavelength / 2));
    CHECK(c.total_power == Approx(1.0));
    CHECK(watt_to_dbm(c.noise_power) == Approx(-91.4));
    CHECK(c.ref_pathloss_db == 61.4);
    CHECK(c.conv_threshold == 1e-4);
    CHECK(sc.bs_pos == Vec3(0, 0, 15));
    CHECK(sc.rdars_pos == Vec3(50, 30, 15));
}

TEST_CASE("scenario text parsing")
{
    SECTION("units, comments and coupling")
    {
        const Scenario sc = parse_scenario("# comment\n"
                                           "n_tx = 4   # trailing\n"
                                           "n_elems = 16\n"
                                           "n_connected = 3\n"
                                           "carrier_freq = 3e9\n"
                                           "spacing = 0.25 lambda\n"
                                           "total_power = 20 dBm\n"
                                           "noise_power = 1e-9 W\n"
                                           "ue_pos = 10,0,0; 0,10,0\n");
        CHECK(sc.config.n_tx == 4);
        CHECK(sc.config.wavelength == Approx(kSpeedOfLight / 3e9));
        CHECK(sc.config.spacing == Approx(0.25 * kSpeedOfLight / 3e9));
        CHECK(sc.config.total_power == Approx(0.1));
        CHECK(sc.config.noise_power == Approx(1e-9));
        CHECK(sc.config.n_ues == 2);
        CHECK(sc.ue_pos[1] == Vec3(0, 10, 0));
    }
    SECTION("wavelength alone fixes the frequency and keeps spacing at half a wavelength")
    {
        const Scenario sc = parse_scenario("wavelength = 0.1\n");
        CHECK(sc.config.carrier_freq == Approx(kSpeedOfLight / 0.1));
        CHECK(sc.config.spacing == Approx(0.05));
    }
    SECTION("errors")
    {
        auto code_of = [](const std::string& text) {
            try {
                parse_scenario(text);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::Internal;
        };
        CHECK(code_of("bogus_key = 1\n") == ErrorCode::Parse);
        CHECK(code_of("n_tx = 4\nn_tx = 5\n") == ErrorCode::Parse);
        CHECK(code_of("n_tx = four\n") == ErrorCode::Parse);
        CHECK(code_of("n_tx 4\n") == ErrorCode::Parse);
        CHECK(code_of("n_connected = 500\n") == ErrorCode::InvalidArgument);
        CHECK(code_of("n_ues = 3\nue_pos = 1,2,3\n") == ErrorCode::InvalidArgument);
        CHECK(code_of("carrier_freq = 28e9\nwavelength = 1\n") == ErrorCode::InvalidArgument);
    }
}

TEST_CASE("scenario round trip through text and files")
{
    Scenario sc = default_scenario();
    set_scenario_value(sc, "ue_pos", "90,5,1.5; 110,-3,1.5");
    set_scenario_value(sc, "total_power", "23 dBm");
    CHECK(sc.config.n_ues == 2);
    const Scenario back = parse_scenario(format_scenario(sc));
    CHECK(back.config.total_power == sc.config.total_power);
    CHECK(back.config.spacing == sc.config.spacing);
    CHECK(back.config.wavelength == sc.config.wavelength);
    CHECK(back.ue_pos == sc.ue_pos);
    CHECK(format_scenario(back) == format_scenario(sc));

    const std::string path = "scenario_roundtrip.cfg";
    {
        std::ofstream f(path);
        f << format_scenario(sc);
    }
    CHECK(format_scenario(load_scenario(path)) == format_scenario(sc));
    std::remove(path.c_str());
    try {
        load_scenario("does/not/exist.cfg");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
        CHECK(std::string(e.what()).find("does/not/exist.cfg") != std::string::npos);
    }
    const Geometry g = scenario_geometry(sc);
    CHECK(g.n_ues() == 2);
}
