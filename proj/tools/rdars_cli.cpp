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

// Command-line front end. Talks to the library only through the C API.

#include "rdars/rdars.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(rdars_status s, const char* what)
{
    if (s != RDARS_OK)
        throw CliError(std::string(what) + ": " + rdars_status_name(s) + ": " + rdars_last_error());
}

using ScenarioPtr = std::unique_ptr<rdars_scenario, decltype(&rdars_scenario_destroy)>;

ScenarioPtr open_scenario(const std::string& path, const std::vector<std::string>& overrides)
{
    rdars_scenario* raw = nullptr;
    if (path.empty())
        check(rdars_scenario_create_default(&raw), "default scenario");
    else
        check(rdars_scenario_load(path.c_str(), &raw), "loading scenario");
    ScenarioPtr sc(raw, &rdars_scenario_destroy);
    for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CliError("--set expects key=value, got '" + kv + "'");
        check(rdars_scenario_set(sc.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
              ("--set " + kv).c_str());
    }
    return sc;
}

struct RunArgs {
    std::string scenario;
    std::vector<std::string> overrides;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string algos = "WA_OPT_ETA,COMPACT_ETA1,RANDOM_ETA";
    std::string sweep;
    std::string out;
    int threads = 0;
    bool no_timing = false;
    bool quiet = false;
};

int cmd_run(const RunArgs& a)
{
    ScenarioPtr sc = open_scenario(a.scenario, a.overrides);
    rdars_campaign* raw = nullptr;
    check(rdars_campaign_create(sc.get(), &raw), "campaign");
    std::unique_ptr<rdars_campaign, decltype(&rdars_campaign_destroy)> c(raw, &rdars_campaign_destroy);
    check(rdars_campaign_set_trials(c.get(), a.trials), "--trials");
    check(rdars_campaign_set_seed(c.get(), a.seed), "--seed");
    check(rdars_campaign_set_algorithms(c.get(), a.algos.c_str()), "--algos");
    check(rdars_campaign_set_sweep(c.get(), a.sweep.c_str()), "--sweep");
    const int threads = a.threads > 0 ? a.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    check(rdars_campaign_set_threads(c.get(), threads), "--threads");

    rdars_result* rraw = nullptr;
    check(rdars_campaign_run(c.get(), &rraw), "campaign");
    std::unique_ptr<rdars_result, decltype(&rdars_result_destroy)> r(rraw, &rdars_result_destroy);
    check(rdars_result_write_csv(r.get(), a.out.c_str(), a.no_timing ? 0 : 1), "writing CSV");

    if (!a.quiet) {
        std::printf("%-12s %-18s %6s %6s %12s %10s %12s\n", "sweep", "algorithm", "ok", "failed", "mean_rate",
                    "std_rate", "mean_min_ue");
        for (size_t i = 0; i < rdars_result_summary_count(r.get()); ++i) {
            rdars_summary s{};
            check(rdars_result_get_summary(r.get(), i, &s), "summary");
            std::printf("%-12.6g %-18s %6d %6d %12.6f %10.6f %12.6f\n", s.sweep_value,
                        rdars_algorithm_name(s.algorithm), s.n_ok, s.n_failed, s.mean_sum_rate, s.std_sum_rate,
                        s.mean_min_ue_rate);
        }
        std::printf("wrote %zu rows to %s\n", rdars_result_row_count(r.get()), a.out.c_str());
    }
    return 0;
}

int cmd_analyze(const std::string& scenario, const std::vector<std::string>& overrides, std::uint64_t seed,
                const std::string& out)
{
    ScenarioPtr sc = open_scenario(scenario, overrides);
    check(rdars_analyze_two_ue(sc.get(), seed, out.c_str()), "analyze");
    std::printf("wrote eta sweep to %s\n", out.c_str());
    return 0;
}

void print_check(const char* name, int passed, const char* detail, void*)
{
    std::printf("%s  %s (%s)\n", passed ? "PASS" : "FAIL", name, detail);
}

int cmd_validate(std::uint64_t seed)
{
    int failed = 0;
    check(rdars_validate(seed, &print_check, nullptr, &failed), "validate");
    if (failed > 0) {
        std::fprintf(stderr, "rdars: %d invariant check(s) failed\n", failed);
        return 1;
    }
    std::printf("all invariant checks passed\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sparsity and beamforming design for RDARS-aided downlink"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rdars_version()));

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Monte Carlo campaign over random UE drops");
    run->add_option("--scenario", ra.scenario, "Scenario file (built-in reference deployment if omitted)")
        ->check(CLI::ExistingFile);
    run->add_option("--set", ra.overrides, "Override a scenario key, e.g. --set n_ues=2");
    run->add_option("--trials", ra.trials, "Number of trials")->check(CLI::PositiveNumber);
    run->add_option("--seed", ra.seed, "Campaign seed");
    run->add_option("--algos", ra.algos, "Comma-separated algorithms")->capture_default_str();
    run->add_option("--sweep", ra.sweep, "Parameter sweep, e.g. ptot_dbm=0:40:5");
    run->add_option("--out", ra.out, "Output CSV path")->required();
    run->add_option("--threads", ra.threads, "Worker threads (default: hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    run->add_flag("--no-timing", ra.no_timing, "Write wall_ms as 0 for byte-reproducible output");
    run->add_flag("--quiet", ra.quiet, "Suppress the summary table");

    std::string an_scenario, an_out;
    std::vector<std::string> an_overrides;
    std::uint64_t an_seed = 1;
    bool two_ue = false, eta_sweep = false;
    auto* analyze = app.add_subcommand("analyze", "Closed-form two-UE correlation versus sparsity");
    analyze->add_option("--scenario", an_scenario, "Scenario file")->check(CLI::ExistingFile);
    analyze->add_option("--set", an_overrides, "Override a scenario key");
    analyze->add_option("--seed", an_seed, "Seed for the UE drop when the scenario lists no two UEs");
    analyze->add_flag("--two-ue", two_ue, "Two-UE analysis")->required();
    analyze->add_flag("--eta-sweep", eta_sweep, "Tabulate every feasible sparsity level")->required();
    analyze->add_option("--out", an_out, "Output CSV path")->required();

    std::uint64_t val_seed = 1;
    auto* validate = app.add_subcommand("validate", "Run the invariant self-checks");
    validate->add_option("--seed", val_seed, "Seed for the random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_run(ra);
        if (*analyze) return cmd_analyze(an_scenario, an_overrides, an_seed, an_out);
        if (*validate) return cmd_validate(val_seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rdars: %s\n", e.what());
        return 2;
    }
    return 1;
}
