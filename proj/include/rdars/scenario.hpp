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

#include "rdars/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rdars {

/// Scalar system parameters. Powers are in watts, lengths in meters.
struct SystemConfig {
    int n_tx = 32;          ///< BS antennas
    int n_elems = 128;      ///< RDARS elements
    int n_connected = 20;   ///< elements in connection mode
    int n_ues = 20;
    double carrier_freq = 28e9;
    double wavelength = kSpeedOfLight / 28e9;
    double spacing = 0.5 * kSpeedOfLight / 28e9;
    double total_power = dbm_to_watt(30.0);
    double noise_power = dbm_to_watt(-91.4);
    double ref_pathloss_db = 61.4;
    double pathloss_exp_bs_rdars = 2.0;
    double pathloss_exp_rdars_ue = 2.8;
    double conv_threshold = 1e-4;
    int max_outer_iters = 200;
    int max_inner_iters = 200;
    double bisection_tol = 1e-10;
    /// Minimum diagonal shift for the lifted phase problem; the solver
    /// raises it to whatever positive definiteness requires.
    double shift_nu = 0.0;
    /// Threshold separating the asymptotic regimes of the two-UE selector.
    double regime_factor = 100.0;
    int m0 = 1;
    Vec3 bs_axis = Vec3::UnitX();
    Vec3 rdars_axis = Vec3::UnitX();
};

/// Throws Error(InvalidArgument) on the first violated invariant.
void validate_config(const SystemConfig& cfg);

/// Positions plus the angle/gain quantities derived from them.
struct Geometry {
    Vec3 bs_pos = Vec3::Zero();
    Vec3 rdars_pos = Vec3::Zero();
    std::vector<Vec3> ue_pos;

    double u_br_aoa = 0.0;
    double u_br_aod = 0.0;
    std::vector<double> u_ru_aod;

    double kappa_br = 0.0;
    std::vector<double> kappa_ru;

    int n_ues() const { return static_cast<int>(u_ru_aod.size()); }
};

/// Linear amplitude gain; kappa^2 is the power attenuation at `distance`.
double path_gain(double distance, double c0_db, double exponent);

/// Cosine of the angle between `direction` and the array `axis`.
double spatial_frequency(const Vec3& direction, const Vec3& axis);

Geometry derive_geometry(const Vec3& bs_pos, const Vec3& rdars_pos, const std::vector<Vec3>& ue_pos,
                         const SystemConfig& cfg);

/// Everything a scenario file can carry: configuration, fixed positions and
/// the UE drop disk used by Monte Carlo campaigns.
struct Scenario {
    SystemConfig config;
    Vec3 bs_pos{0.0, 0.0, 15.0};
    Vec3 rdars_pos{50.0, 30.0, 15.0};
    std::vector<Vec3> ue_pos;
    Vec3 ue_center{100.0, 0.0, 1.5};
    double ue_radius = 20.0;
};

/// Reference deployment: 28 GHz, N_t=32, N=128, a=20, K=20, 30 dBm, -91.4 dBm noise.
Scenario default_scenario();

/// Flat `key = value` text, one entry per line, `#` starts a comment.
/// Power fields accept a `dBm` suffix, `spacing` accepts a `lambda` suffix,
/// vectors are written `x,y,z` and `ue_pos` is a `;`-separated list (which
/// also sets `n_ues` unless that key is given explicitly).
Scenario parse_scenario(const std::string& text, Scenario base = default_scenario());
Scenario load_scenario(const std::string& path);
std::string format_scenario(const Scenario& sc);

/// Applies a single key/value pair with the same syntax and coupling rules
/// as the file format.
void set_scenario_value(Scenario& sc, const std::string& key, const std::string& value);

/// Geometry for the scenario's fixed `ue_pos`; requires ue_pos.size() == n_ues.
Geometry scenario_geometry(const Scenario& sc);

}  // namespace rdars
