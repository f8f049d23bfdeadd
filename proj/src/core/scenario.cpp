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

#include "rdars/scenario.hpp"

#include "rdars/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace rdars {

void validate_config(const SystemConfig& c)
{
    auto bad = [](const std::string& m) { fail(ErrorCode::InvalidArgument, "invalid config: " + m); };
    if (c.n_tx < 1) bad("n_tx must be >= 1");
    if (c.n_elems < 1) bad("n_elems must be >= 1");
    if (c.n_connected < 1 || c.n_connected > c.n_elems) bad("n_connected must satisfy 1 <= a <= N");
    if (c.n_ues < 1) bad("n_ues must be >= 1");
    if (!(c.spacing > 0.0)) bad("spacing must be > 0");
    if (!(c.wavelength > 0.0)) bad("wavelength must be > 0");
    if (!(c.carrier_freq > 0.0)) bad("carrier_freq must be > 0");
    if (std::abs(c.wavelength * c.carrier_freq / kSpeedOfLight - 1.0) > 1e-9)
        bad("wavelength inconsistent with carrier_freq");
    if (!(c.total_power > 0.0)) bad("total_power must be > 0");
    if (!(c.noise_power > 0.0)) bad("noise_power must be > 0");
    if (!(c.pathloss_exp_bs_rdars > 0.0) || !(c.pathloss_exp_rdars_ue > 0.0)) bad("path-loss exponents must be > 0");
    if (!(c.conv_threshold > 0.0)) bad("conv_threshold must be > 0");
    if (c.max_outer_iters < 1 || c.max_inner_iters < 1) bad("iteration bounds must be >= 1");
    if (!(c.bisection_tol > 0.0)) bad("bisection_tol must be > 0");
    if (!(c.shift_nu >= 0.0)) bad("shift_nu must be >= 0");
    if (!(c.regime_factor > 1.0)) bad("regime_factor must be > 1");
    if (c.m0 < 1) bad("m0 must be >= 1");
    if (c.bs_axis.norm() == 0.0 || c.rdars_axis.norm() == 0.0) bad("array axes must be nonzero");
}

double path_gain(double distance, double c0_db, double exponent)
{
    require(distance >= 1.0, ErrorCode::Domain, "path_gain: distance below the 1 m reference");
    require(exponent > 0.0, ErrorCode::Domain, "path_gain: exponent must be positive");
    return std::sqrt(std::pow(10.0, -c0_db / 10.0) * std::pow(distance, -exponent));
}

double spatial_frequency(const Vec3& direction, const Vec3& axis)
{
    const double u = direction.dot(axis) / (direction.norm() * axis.norm());
    return std::clamp(u, -1.0, 1.0);
}

Geometry derive_geometry(const Vec3& bs_pos, const Vec3& rdars_pos, const std::vector<Vec3>& ue_pos,
                         const SystemConfig& cfg)
{
    const Vec3 br = rdars_pos - bs_pos;
    require(br.norm() > 0.0, ErrorCode::InvalidArgument, "derive_geometry: BS and RDARS positions coincide");
    Geometry g;
    g.bs_pos = bs_pos;
    g.rdars_pos = rdars_pos;
    g.ue_pos = ue_pos;
    // departure from the BS towards the RDARS, arrival at the RDARS from the BS
    g.u_br_aod = spatial_frequency(br, cfg.bs_axis);
    g.u_br_aoa = spatial_frequency(-br, cfg.rdars_axis);
    g.kappa_br = path_gain(br.norm(), cfg.ref_pathloss_db, cfg.pathloss_exp_bs_rdars);
    g.u_ru_aod.reserve(ue_pos.size());
    g.kappa_ru.reserve(ue_pos.size());
    for (std::size_t k = 0; k < ue_pos.size(); ++k) {
        const Vec3 ru = ue_pos[k] - rdars_pos;
        if (ru.norm() < 1.0)
            fail(ErrorCode::Domain, "derive_geometry: UE " + std::to_string(k) + " closer than 1 m to the RDARS");
        g.u_ru_aod.push_back(spatial_frequency(ru, cfg.rdars_axis));
        g.kappa_ru.push_back(path_gain(ru.norm(), cfg.ref_pathloss_db, cfg.pathloss_exp_rdars_ue));
    }
    return g;
}

Scenario default_scenario()
{
    Scenario sc;
    return sc;
}

Geometry scenario_geometry(const Scenario& sc)
{
    require(static_cast<int>(sc.ue_pos.size()) == sc.config.n_ues, ErrorCode::InvalidArgument,
            "scenario: ue_pos has " + std::to_string(sc.ue_pos.size()) + " entries but n_ues = " +
                std::to_string(sc.config.n_ues));
    return derive_geometry(sc.bs_pos, sc.rdars_pos, sc.ue_pos, sc.config);
}

// ---------------------------------------------------------------------------
// key/value file format

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(int line, const std::string& msg)
{
    fail(ErrorCode::Parse, "scenario line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& tok, int line)
{
    const std::string t = trim(tok);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        parse_error(line, "expected a number, got '" + t + "'");
    }
    if (used != t.size() || !std::isfinite(v)) parse_error(line, "expected a number, got '" + t + "'");
    return v;
}

int parse_int(const std::string& tok, int line)
{
    const double v = parse_double(tok, line);
    if (v != std::floor(v) || std::abs(v) > 1e9) parse_error(line, "expected an integer, got '" + trim(tok) + "'");
    return static_cast<int>(v);
}

/// Splits a trailing unit word (e.g. "30 dBm") from the numeric part.
std::pair<std::string, std::string> split_unit(const std::string& value)
{
    const std::string t = trim(value);
    const auto sp = t.find_last_of(" \t");
    if (sp == std::string::npos) return {t, {}};
    return {trim(t.substr(0, sp)), trim(t.substr(sp + 1))};
}

double parse_power(const std::string& value, int line)
{
    auto [num, unit] = split_unit(value);
    if (unit.empty() || unit == "W") return parse_double(num, line);
    if (unit == "dBm") return dbm_to_watt(parse_double(num, line));
    parse_error(line, "unknown power unit '" + unit + "' (use W or dBm)");
}

Vec3 parse_vec3(const std::string& value, int line)
{
    std::stringstream ss(value);
    std::string part;
    std::vector<double> xs;
    while (std::getline(ss, part, ',')) xs.push_back(parse_double(part, line));
    if (xs.size() != 3) parse_error(line, "expected x,y,z");
    return {xs[0], xs[1], xs[2]};
}

std::vector<Vec3> parse_vec3_list(const std::string& value, int line)
{
    std::vector<Vec3> out;
    std::stringstream ss(value);
    std::string part;
    while (std::getline(ss, part, ';')) {
        if (trim(part).empty()) continue;
        out.push_back(parse_vec3(part, line));
    }
    return out;
}

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_vec3(const Vec3& v)
{
    return fmt_double(v.x()) + "," + fmt_double(v.y()) + "," + fmt_double(v.z());
}

}  // namespace

Scenario parse_scenario(const std::string& text, Scenario base)
{
    Scenario sc = std::move(base);
    SystemConfig& c = sc.config;
    const double spacing_ratio = c.spacing / c.wavelength;

    bool have_freq = false, have_lambda = false, have_spacing = false;
    std::optional<double> spacing_in_lambda;
    std::map<std::string, int> seen;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string l = trim(raw);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string::npos) parse_error(line, "expected key = value");
        const std::string key = trim(l.substr(0, eq));
        const std::string val = trim(l.substr(eq + 1));
        if (val.empty()) parse_error(line, "empty value for '" + key + "'");
        if (seen.count(key)) parse_error(line, "duplicate key '" + key + "'");
        seen[key] = line;

        if (key == "n_tx") c.n_tx = parse_int(val, line);
        else if (key == "n_elems") c.n_elems = parse_int(val, line);
        else if (key == "n_connected") c.n_connected = parse_int(val, line);
        else if (key == "n_ues") c.n_ues = parse_int(val, line);
        else if (key == "carrier_freq") { c.carrier_freq = parse_double(val, line); have_freq = true; }
        else if (key == "wavelength") { c.wavelength = parse_double(val, line); have_lambda = true; }
        else if (key == "spacing") {
            have_spacing = true;
            auto [num, unit] = split_unit(val);
            if (unit.empty() || unit == "m") c.spacing = parse_double(num, line);
            else if (unit == "lambda") spacing_in_lambda = parse_double(num, line);
            else parse_error(line, "unknown spacing unit '" + unit + "' (use m or lambda)");
        }
        else if (key == "total_power") c.total_power = parse_power(val, line);
        else if (key == "noise_power") c.noise_power = parse_power(val, line);
        else if (key == "ref_pathloss_db") c.ref_pathloss_db = parse_double(val, line);
        else if (key == "pathloss_exp_bs_rdars") c.pathloss_exp_bs_rdars = parse_double(val, line);
        else if (key == "pathloss_exp_rdars_ue") c.pathloss_exp_rdars_ue = parse_double(val, line);
        else if (key == "conv_threshold") c.conv_threshold = parse_double(val, line);
        else if (key == "max_outer_iters") c.max_outer_iters = parse_int(val, line);
        else if (key == "max_inner_iters") c.max_inner_iters = parse_int(val, line);
        else if (key == "bisection_tol") c.bisection_tol = parse_double(val, line);
        else if (key == "shift_nu") c.shift_nu = parse_double(val, line);
        else if (key == "regime_factor") c.regime_factor = parse_double(val, line);
        else if (key == "m0") c.m0 = parse_int(val, line);
        else if (key == "bs_axis") c.bs_axis = parse_vec3(val, line);
        else if (key == "rdars_axis") c.rdars_axis = parse_vec3(val, line);
        else if (key == "bs_pos") sc.bs_pos = parse_vec3(val, line);
        else if (key == "rdars_pos") sc.rdars_pos = parse_vec3(val, line);
        else if (key == "ue_pos") sc.ue_pos = parse_vec3_list(val, line);
        else if (key == "ue_center") sc.ue_center = parse_vec3(val, line);
        else if (key == "ue_radius") sc.ue_radius = parse_double(val, line);
        else parse_error(line, "unknown key '" + key + "'");
    }

    if (have_freq && !have_lambda) c.wavelength = kSpeedOfLight / c.carrier_freq;
    if (have_lambda && !have_freq) c.carrier_freq = kSpeedOfLight / c.wavelength;
    if (spacing_in_lambda) c.spacing = *spacing_in_lambda * c.wavelength;
    else if (!have_spacing && (have_freq || have_lambda)) c.spacing = spacing_ratio * c.wavelength;

    if (seen.count("ue_pos") && !seen.count("n_ues")) c.n_ues = static_cast<int>(sc.ue_pos.size());

    validate_config(c);
    if (!sc.ue_pos.empty() && static_cast<int>(sc.ue_pos.size()) != c.n_ues)
        fail(ErrorCode::InvalidArgument, "scenario: ue_pos has " + std::to_string(sc.ue_pos.size()) +
                                             " entries but n_ues = " + std::to_string(c.n_ues));
    require(sc.ue_radius >= 0.0, ErrorCode::InvalidArgument, "scenario: ue_radius must be >= 0");
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream f(path);
    if (!f) fail(ErrorCode::Io, "cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

void set_scenario_value(Scenario& sc, const std::string& key, const std::string& value)
{
    sc = parse_scenario(key + " = " + value, sc);
}

std::string format_scenario(const Scenario& sc)
{
    const SystemConfig& c = sc.config;
    std::ostringstream o;
    o << "n_tx = " << c.n_tx << "\n"
      << "n_elems = " << c.n_elems << "\n"
      << "n_connected = " << c.n_connected << "\n"
      << "n_ues = " << c.n_ues << "\n"
      << "carrier_freq = " << fmt_double(c.carrier_freq) << "\n"
      << "wavelength = " << fmt_double(c.wavelength) << "\n"
      << "spacing = " << fmt_double(c.spacing) << "\n"
      << "total_power = " << fmt_double(c.total_power) << "\n"
      << "noise_power = " << fmt_double(c.noise_power) << "\n"
      << "ref_pathloss_db = " << fmt_double(c.ref_pathloss_db) << "\n"
      << "pathloss_exp_bs_rdars = " << fmt_double(c.pathloss_exp_bs_rdars) << "\n"
      << "pathloss_exp_rdars_ue = " << fmt_double(c.pathloss_exp_rdars_ue) << "\n"
      << "conv_threshold = " << fmt_double(c.conv_threshold) << "\n"
      << "max_outer_iters = " << c.max_outer_iters << "\n"
      << "max_inner_iters = " << c.max_inner_iters << "\n"
      << "bisection_tol = " << fmt_double(c.bisection_tol) << "\n"
      << "shift_nu = " << fmt_double(c.shift_nu) << "\n"
      << "regime_factor = " << fmt_double(c.regime_factor) << "\n"
      << "m0 = " << c.m0 << "\n"
      << "bs_axis = " << fmt_vec3(c.bs_axis) << "\n"
      << "rdars_axis = " << fmt_vec3(c.rdars_axis) << "\n"
      << "bs_pos = " << fmt_vec3(sc.bs_pos) << "\n"
      << "rdars_pos = " << fmt_vec3(sc.rdars_pos) << "\n";
    if (!sc.ue_pos.empty()) {
        o << "ue_pos = ";
        for (std::size_t k = 0; k < sc.ue_pos.size(); ++k) o << (k ? "; " : "") << fmt_vec3(sc.ue_pos[k]);
        o << "\n";
    }
    o << "ue_center = " << fmt_vec3(sc.ue_center) << "\n"
      << "ue_radius = " << fmt_double(sc.ue_radius) << "\n";
    return o.str();
}

}  // namespace rdars
