// SPDX-License-Identifier: Apache-2.0
//
// bdris: beyond-diagonal RIS configuration and channel analysis library
// Copyright (C) 2026 The bdris authors
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

#include "cli.hpp"

#include "bdris/adversarial.hpp"
#include "bdris/errors.hpp"
#include "bdris/experiment.hpp"
#include "bdris/json_io.hpp"
#include "bdris/optimize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <thread>

#ifndef BDRIS_VERSION
#define BDRIS_VERSION "dev"
#endif

namespace bdris::cli {

namespace {

std::vector<int> parse_int_list(const std::string& text, const std::string& flag)
{
    std::vector<int> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = std::min(text.find(',', start), text.size());
        const std::string_view part(text.data() + start, pos - start);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
            throw InputError(flag + ": '" + std::string(part) + "' is not an integer");
        }
        values.push_back(value);
        start = pos + 1;
    }
    return values;
}

unsigned default_threads()
{
    if (const char* env = std::getenv("BDRIS_THREADS")) {
        unsigned value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
            return value;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <typename T>
Json optional_json(const std::optional<T>& value)
{
    return value ? Json(*value) : Json(nullptr);
}

void echo_config(std::ostream& err, const Json& config)
{
    err << "config: " << config.dump() << '\n';
}

struct SimulateOptions {
    std::string scenario;
    std::string sizes = "8,16,24,32,40,48,56,64";
    int trials = 1000;
    std::string arch = "sc,gc:2,gc:4,tc";
    std::uint64_t seed = 0;
    double z0 = kDefaultZ0;
    std::optional<int> q;
    std::optional<int> group_size;
    std::string out;
    std::optional<std::string> summary;
    bool check_membership = false;
};

int run_simulate(const SimulateOptions& opt, unsigned threads, std::ostream& out, std::ostream& err)
{
    ExperimentConfig config;
    config.scenario = parse_scenario(opt.scenario);
    config.sizes = parse_int_list(opt.sizes, "--sizes");
    config.trials = opt.trials;
    config.archs = parse_architecture_list(opt.arch);
    config.seed = opt.seed;
    config.z0 = opt.z0;
    config.q_override = opt.q;
    config.group_size = opt.group_size;
    config.check_membership = opt.check_membership;

    Json echo;
    echo["command"] = "simulate";
    echo["scenario"] = opt.scenario;
    echo["sizes"] = config.sizes;
    echo["trials"] = config.trials;
    Json archs = Json::array();
    for (const auto& a : config.archs) {
        archs.push_back(a.text);
    }
    echo["arch"] = archs;
    echo["seed"] = config.seed;
    echo["z0"] = config.z0;
    echo["q"] = optional_json(config.q_override);
    echo["group_size"] = config.group_size.value_or(default_group_size(config.scenario));
    echo["out"] = opt.out;
    echo["summary"] = optional_json(opt.summary);
    echo["check_membership"] = config.check_membership;
    echo["threads"] = threads;
    echo["rng"] = std::string(Rng::algorithm);
    echo_config(err, echo);

    validate(config);
    const auto records = run_experiment(config, threads);

    std::ofstream csv(opt.out, std::ios::binary);
    if (!csv) {
        throw InputError("cannot write '" + opt.out + "'");
    }
    write_results_csv(csv, records);

    const auto rows = summarize(records);
    if (opt.summary) {
        std::ofstream summary(*opt.summary, std::ios::binary);
        if (!summary) {
            throw InputError("cannot write '" + *opt.summary + "'");
        }
        write_summary_csv(summary, rows);
    }
    write_summary_csv(out, rows);
    return kSuccess;
}

struct OptimizeOptions {
    std::string arch;
    std::string channels;
    double z0 = kDefaultZ0;
    bool emit_matrices = false;
};

int run_optimize(const OptimizeOptions& opt, std::ostream& out, std::ostream& err)
{
    Json echo;
    echo["command"] = "optimize";
    echo["arch"] = opt.arch;
    echo["channels"] = opt.channels;
    echo["z0"] = opt.z0;
    echo["emit_matrices"] = opt.emit_matrices;
    echo_config(err, echo);

    const ChannelPair pair = read_channel_file(opt.channels);
    const ArchitectureSpec arch = parse_architecture(opt.arch).resolve(static_cast<int>(pair.size()));
    const OptimizeResult result = optimize(pair, arch, opt.z0);
    out << optimize_result_to_json(result, opt.emit_matrices).dump(2) << '\n';
    return kSuccess;
}

struct MembershipOptions {
    std::string channels;
    bool brute_force = false;
};

int run_membership(const MembershipOptions& opt, std::ostream& out, std::ostream& err)
{
    Json echo;
    echo["command"] = "membership";
    echo["channels"] = opt.channels;
    echo["brute_force"] = opt.brute_force;
    echo["tol"] = kProportionalityTol;
    echo_config(err, echo);

    const ChannelPair pair = read_channel_file(opt.channels);
    const MembershipReport report = in_a(pair);
    Json doc = membership_to_json(report);
    int code = kSuccess;
    if (opt.brute_force) {
        const bool brute = in_a_bruteforce(pair);
        doc["in_a_bruteforce"] = brute;
        if (brute != report.in_a) {
            code = kOracleDisagreement;
        }
    }
    out << doc.dump(2) << '\n';
    return code;
}

struct OracleOptions {
    int n = 6;
    int trials = 200;
    std::uint64_t seed = 0;
};

// Rotates over every generator; group sizes shrink to 1 when 2 does not divide n.
ChannelPair oracle_pair(int n, int trial, Rng& rng)
{
    const int k = n % 2 == 0 ? 2 : 1;
    switch (trial % 5) {
    case 0: return gen_rayleigh(n, rng);
    case 1: return gen_tc_adversarial(n, default_swap_extent(n), rng);
    case 2: return gen_gc_favorable(n, k, rng);
    case 3: return gen_gc_adversarial(n, k, rng);
    default: return gen_los(n, rng);
    }
}

int run_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err)
{
    Json echo;
    echo["command"] = "oracle";
    echo["n"] = opt.n;
    echo["trials"] = opt.trials;
    echo["seed"] = opt.seed;
    echo["tol"] = kProportionalityTol;
    echo_config(err, echo);

    if (opt.n < 2 || opt.n > kBruteForceMaxSize) {
        throw InputError("--n must lie in [2, " + std::to_string(kBruteForceMaxSize) + "]");
    }
    if (opt.trials < 1) {
        throw InputError("--trials must be >= 1");
    }
    int disagreements = 0;
    int members = 0;
    for (int t = 0; t < opt.trials; ++t) {
        const std::uint64_t seed = mix64(opt.seed, static_cast<std::uint64_t>(opt.n), static_cast<std::uint64_t>(t));
        Rng rng(seed);
        const ChannelPair pair = oracle_pair(opt.n, t, rng);
        const bool fast = in_a(pair).in_a;
        const bool brute = in_a_bruteforce(pair);
        members += fast ? 1 : 0;
        if (fast != brute) {
            ++disagreements;
            out << "disagreement: trial " << t << " seed " << seed << " in_a " << fast << " brute-force " << brute
                << '\n';
        }
    }
    out << disagreements << " disagreements (" << opt.trials << " pairs, N = " << opt.n << ", " << members
        << " in A)\n";
    return disagreements == 0 ? kSuccess : kOracleDisagreement;
}

struct GenOptions {
    std::string scenario;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::optional<int> q;
    std::optional<int> group_size;
};

int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err)
{
    const Scenario scenario = parse_scenario(opt.scenario);
    Json echo;
    echo["command"] = "gen";
    echo["scenario"] = opt.scenario;
    echo["n"] = opt.n;
    echo["seed"] = opt.seed;
    echo["q"] = optional_json(opt.q);
    echo["group_size"] = opt.group_size.value_or(default_group_size(scenario));
    echo["out"] = opt.out;
    echo["rng"] = std::string(Rng::algorithm);
    echo_config(err, echo);

    if (opt.n < 1) {
        throw InputError("--n must be >= 1");
    }
    Rng rng(opt.seed);
    const ChannelPair pair = generate_scenario_pair(scenario, opt.n, opt.q, opt.group_size, rng);
    write_channel_file(opt.out, pair);
    out << "wrote " << opt.out << '\n';
    return kSuccess;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Beyond-diagonal RIS configuration, adversarial-channel tests and Monte Carlo experiments",
                 "bdris_sim"};
    app.set_version_flag("--version", std::string("bdris_sim ") + BDRIS_VERSION);
    app.require_subcommand(1);

    unsigned threads = default_threads();
    app.add_option("--threads", threads, "Worker threads (default: $BDRIS_THREADS or hardware concurrency)")
        ->check(CLI::PositiveNumber);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo received-power experiment, CSV output");
    simulate->add_option("--scenario", sim.scenario, "rayleigh | gc_favorable | gc_adversarial | tc_adversarial | los")
        ->required();
    simulate->add_option("--sizes", sim.sizes, "Comma-separated RIS sizes")->capture_default_str();
    simulate->add_option("--trials", sim.trials, "Trials per size")->capture_default_str();
    simulate->add_option("--arch", sim.arch, "Comma-separated architectures: sc, tc, fc, gc:k, gc:I=i1,i2,...")
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate->add_option("--z0", sim.z0, "Reference impedance (ohm)")->capture_default_str();
    simulate->add_option("--q", sim.q, "Swap extent for tc_adversarial (odd, < N)");
    simulate->add_option("--group-size", sim.group_size, "Group size of the gc_* generators");
    simulate->add_option("--out", sim.out, "Per-trial results CSV")->required();
    simulate->add_option("--summary", sim.summary, "Summary CSV");
    simulate->add_flag("--check-membership", sim.check_membership, "Record in_a for every generated pair");
    simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    OptimizeOptions opt;
    auto* optimize_cmd = app.add_subcommand("optimize", "Optimize one channel pair, JSON output");
    optimize_cmd->add_option("--arch", opt.arch, "sc, tc, fc, gc:k or gc:I=i1,i2,...")->required();
    optimize_cmd->add_option("--channels", opt.channels, "Channel JSON file")->required();
    optimize_cmd->add_option("--z0", opt.z0, "Reference impedance (ohm)")->capture_default_str();
    optimize_cmd->add_flag("--emit-matrices", opt.emit_matrices, "Include B and Theta");

    MembershipOptions mem;
    auto* membership = app.add_subcommand("membership", "Adversarial-set membership report, JSON output");
    membership->add_option("--channels", mem.channels, "Channel JSON file")->required();
    membership->add_flag("--brute-force", mem.brute_force, "Also enumerate every cut set (N <= 16)");

    OracleOptions ora;
    auto* oracle = app.add_subcommand("oracle", "Compare the cut-set test with full enumeration");
    oracle->add_option("--n", ora.n, "RIS size (2..16)")->capture_default_str();
    oracle->add_option("--trials", ora.trials, "Number of pairs")->capture_default_str();
    oracle->add_option("--seed", ora.seed, "Master seed")->capture_default_str();

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate one channel pair as JSON");
    gen_cmd->add_option("--scenario", gen.scenario, "rayleigh | gc_favorable | gc_adversarial | tc_adversarial | los")
        ->required();
    gen_cmd->add_option("--n", gen.n, "RIS size")->required();
    gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output JSON file")->required();
    gen_cmd->add_option("--q", gen.q, "Swap extent for tc_adversarial");
    gen_cmd->add_option("--group-size", gen.group_size, "Group size of the gc_* generators");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Error& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (*simulate) {
            return run_simulate(sim, threads, out, err);
        }
        if (*optimize_cmd) {
            return run_optimize(opt, out, err);
        }
        if (*membership) {
            return run_membership(mem, out, err);
        }
        if (*oracle) {
            return run_oracle(ora, out, err);
        }
        if (*gen_cmd) {
            return run_gen(gen, out, err);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kInputError;
}

} // namespace bdris::cli
