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

// Seeded Monte Carlo campaigns over random UE drops.
//
// Randomness: trial t of a campaign with seed s draws from std::mt19937_64
// seeded with splitmix64(s ^ t). Uniform doubles take the top 53 bits of
// each output. A trial draws, in order, (radius, angle) uniforms for each UE
// and then one uniform for the random-sparsity baseline, so every sweep
// point and algorithm of a trial sees the same drop.

#include "rdars/closed_form.hpp"
#include "rdars/scenario.hpp"
#include "rdars/wmmse.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rdars {

enum class Algorithm {
    WaOptEta,        ///< WA with the sparsity search
    CompactEta1,     ///< WA with eta = 1
    RandomEta,       ///< WA with a uniformly drawn eta
    ExhaustiveEta,   ///< independent per-eta WA runs, best kept
    SingleUeClosed,  ///< closed-form optimum (K = 1)
    TwoUeProp1,      ///< closed-form sparsity selection, then WA (K = 2)
};

const char* to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);
/// Comma-separated list of algorithm names.
std::vector<Algorithm> parse_algorithm_list(const std::string& list);

std::uint64_t splitmix64(std::uint64_t x);

class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(splitmix64(seed ^ trial)) {}
    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// K positions uniform over the horizontal disk (center, radius) at the
/// center's height.
std::vector<Vec3> drop_ues(const Vec3& center, double radius, int K, TrialRng& rng);

struct Sweep {
    std::string name = "ptot_dbm";
    std::vector<double> values;
};

/// "ptot_dbm=a:b:step", inclusive of b up to rounding.
Sweep parse_sweep(const std::string& spec);

struct Campaign {
    Scenario scenario;
    int n_trials = 1;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::WaOptEta};
    std::optional<Sweep> sweep;
    int threads = 1;
};

void validate_campaign(const Campaign& c);

struct TrialRecord {
    int trial = 0;
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::WaOptEta;
    int eta = 0;
    double sum_rate = 0.0;
    double min_ue_rate = 0.0;
    int iterations = 0;
    double wall_ms = 0.0;
    std::string status = "ok";  ///< ok, not_converged or failed:<reason>

    bool ok() const { return status == "ok" || status == "not_converged"; }
};

struct CellSummary {
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::WaOptEta;
    int n_ok = 0;
    int n_failed = 0;
    double mean_sum_rate = 0.0;
    double std_sum_rate = 0.0;
    double mean_min_ue_rate = 0.0;
    double mean_wall_ms = 0.0;
};

struct ResultTable {
    std::vector<TrialRecord> rows;  ///< sorted by (sweep_value, algorithm name, trial)

    std::vector<CellSummary> summary() const;
};

/// One trial at one sweep point for one algorithm. `random_u` selects the
/// sparsity for RandomEta.
TrialRecord run_trial(const Geometry& geo, const SystemConfig& cfg, Algorithm algo, double random_u);

ResultTable run_campaign(const Campaign& c);

/// CSV with header trial,sweep_value,algorithm,eta,sum_rate_bits,min_ue_rate,iters,wall_ms,status.
/// Floats carry 9 significant digits; wall_ms is written as 0 when
/// `include_timing` is false.
std::string format_csv(const ResultTable& t, bool include_timing = true);
void emit_csv(const ResultTable& t, const std::string& path, bool include_timing = true);

/// Per-eta correlation table for a two-UE geometry.
struct EtaSweepRow {
    int eta = 1;
    double kernel_sq = 0.0;       ///< |S_eta(du)|^2 / a^2
    double eps_ref_direct = 0.0;  ///< cscc of the assembled channels under the reference beam
    double eps_ref_closed = 0.0;  ///< closed-form correlation under the reference beam
    double eps_bar = 0.0;         ///< X-function form
    double eps_ones = 0.0;        ///< closed-form correlation with all-ones reflection
    bool in_r_set = false;
};

struct EtaSweep {
    SparsitySelection selection;
    std::vector<EtaSweepRow> rows;
};

EtaSweep two_ue_eta_sweep(const Geometry& geo, const SystemConfig& cfg);
std::string format_eta_sweep_csv(const EtaSweep& s);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rdars
