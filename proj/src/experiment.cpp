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

#include "bdris/experiment.hpp"

#include "bdris/adversarial.hpp"
#include "bdris/errors.hpp"
#include "bdris/format.hpp"
#include "bdris/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>
#include <tuple>

namespace bdris {

std::string_view to_string(Scenario scenario)
{
    switch (scenario) {
    case Scenario::rayleigh: return "rayleigh";
    case Scenario::gc_favorable: return "gc_favorable";
    case Scenario::gc_adversarial: return "gc_adversarial";
    case Scenario::tc_adversarial: return "tc_adversarial";
    case Scenario::los: return "los";
    }
    return "unknown";
}

Scenario parse_scenario(std::string_view name)
{
    for (const auto s : {Scenario::rayleigh, Scenario::gc_favorable, Scenario::gc_adversarial,
                         Scenario::tc_adversarial, Scenario::los}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw InputError("unknown scenario '" + std::string(name)
                     + "' (expected rayleigh, gc_favorable, gc_adversarial, tc_adversarial or los)");
}

int default_group_size(Scenario scenario)
{
    return scenario == Scenario::gc_adversarial ? 4 : 2;
}

std::uint64_t mix64(std::uint64_t seed, std::uint64_t size_index, std::uint64_t trial_index)
{
    std::uint64_t z = seed ^ (size_index * 0x9E3779B97F4A7C15ULL) ^ (trial_index * 0xBF58476D1CE4E5B9ULL);
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ChannelPair generate_scenario_pair(Scenario scenario, int n, std::optional<int> q, std::optional<int> group_size,
                                   Rng& rng)
{
    const int k = group_size.value_or(default_group_size(scenario));
    switch (scenario) {
    case Scenario::rayleigh: return gen_rayleigh(n, rng);
    case Scenario::los: return gen_los(n, rng);
    case Scenario::gc_favorable: return gen_gc_favorable(n, k, rng);
    case Scenario::gc_adversarial: return gen_gc_adversarial(n, k, rng);
    case Scenario::tc_adversarial: return gen_tc_adversarial(n, q.value_or(default_swap_extent(n)), rng);
    }
    throw InputError("unknown scenario");
}

std::string scenario_label(const ExperimentConfig& config, int n)
{
    std::string label(to_string(config.scenario));
    if (config.scenario == Scenario::tc_adversarial) {
        label += "_q" + std::to_string(config.q_override.value_or(default_swap_extent(n)));
    }
    return label;
}

void validate(const ExperimentConfig& config)
{
    if (config.trials < 1) {
        throw InputError("experiment: trials must be >= 1");
    }
    if (config.sizes.empty()) {
        throw InputError("experiment: no sizes given");
    }
    if (config.archs.empty()) {
        throw InputError("experiment: no architectures given");
    }
    if (!(config.z0 > 0.0) || !std::isfinite(config.z0)) {
        throw InputError("experiment: z0 must be positive and finite");
    }
    if (!(config.rank_rtol > 0.0 && config.rank_rtol < 1.0)) {
        throw InputError("experiment: rank tolerance must lie in (0, 1)");
    }
    for (const int n : config.sizes) {
        if (n < 2) {
            throw InputError("experiment: sizes must be >= 2 (got " + std::to_string(n) + ")");
        }
        for (const auto& arch : config.archs) {
            try {
                (void)arch.resolve(n);
            } catch (const InputError& e) {
                throw InputError("experiment: architecture '" + arch.text + "' is invalid for N = "
                                 + std::to_string(n) + ": " + e.what());
            }
        }
        switch (config.scenario) {
        case Scenario::gc_favorable:
        case Scenario::gc_adversarial: {
            const int k = config.group_size.value_or(default_group_size(config.scenario));
            if (k < 1 || n % k != 0) {
                throw InputError("experiment: scenario group size " + std::to_string(k)
                                 + " does not divide N = " + std::to_string(n));
            }
            break;
        }
        case Scenario::tc_adversarial: {
            const int q = config.q_override.value_or(default_swap_extent(n));
            if (q < 1 || q >= n || q % 2 == 0) {
                throw InputError("experiment: q = " + std::to_string(q) + " must be odd and below N = "
                                 + std::to_string(n));
            }
            break;
        }
        case Scenario::rayleigh:
        case Scenario::los: break;
        }
    }
}

namespace {

std::vector<TrialRecord> run_trial(const ExperimentConfig& config, const std::vector<ArchitectureSpec>& archs,
                                   const std::string& label, int n, std::size_t size_index, int trial)
{
    const std::uint64_t trial_seed = mix64(config.seed, size_index, static_cast<std::uint64_t>(trial));
    Rng rng(trial_seed);
    const ChannelPair pair = generate_scenario_pair(config.scenario, n, config.q_override, config.group_size, rng);

    std::optional<bool> membership;
    if (config.check_membership) {
        membership = in_a(pair).in_a;
    }

    std::vector<TrialRecord> out;
    out.reserve(archs.size());
    for (const auto& arch : archs) {
        const OptimizeResult result = optimize(pair, arch, config.z0, config.rank_rtol);
        out.push_back(TrialRecord{label, n, arch.label(), trial, trial_seed, result.p_r, result.p_bar_full,
                                  result.ratio_full, result.residual_norm, result.consistent, membership});
    }
    return out;
}

} // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config, unsigned threads)
{
    validate(config);

    struct Task {
        std::size_t size_index;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(config.sizes.size() * static_cast<std::size_t>(config.trials));
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
        for (int t = 0; t < config.trials; ++t) {
            tasks.push_back({s, t});
        }
    }

    std::vector<std::vector<ArchitectureSpec>> archs_per_size;
    std::vector<std::string> labels;
    for (const int n : config.sizes) {
        std::vector<ArchitectureSpec> resolved;
        for (const auto& arch : config.archs) {
            resolved.push_back(arch.resolve(n));
        }
        archs_per_size.push_back(std::move(resolved));
        labels.push_back(scenario_label(config, n));
    }

    std::vector<std::vector<TrialRecord>> slots(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1)) {
            const Task& task = tasks[k];
            try {
                slots[k] = run_trial(config, archs_per_size[task.size_index], labels[task.size_index],
                                     config.sizes[task.size_index], task.size_index, task.trial);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }

    // Report the error of the earliest task so failures are reproducible too.
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::vector<TrialRecord> records;
    records.reserve(tasks.size() * config.archs.size());
    for (auto& slot : slots) {
        std::move(slot.begin(), slot.end(), std::back_inserter(records));
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records)
{
    if (records.empty()) {
        throw InputError("summarize: no records");
    }
    using Key = std::tuple<std::string, int, std::string>;
    std::map<Key, std::size_t> index;
    std::vector<std::vector<const TrialRecord*>> groups;
    for (const auto& r : records) {
        const auto [it, inserted] = index.try_emplace(Key{r.scenario, r.n, r.arch}, groups.size());
        if (inserted) {
            groups.emplace_back();
        }
        groups[it->second].push_back(&r);
    }

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& group : groups) {
        const auto count = static_cast<double>(group.size());
        double sum = 0.0;
        double lo = group.front()->ratio_full;
        double hi = lo;
        int consistent = 0;
        for (const auto* r : group) {
            sum += r->ratio_full;
            lo = std::min(lo, r->ratio_full);
            hi = std::max(hi, r->ratio_full);
            consistent += r->consistent ? 1 : 0;
        }
        const double mean = sum / count;
        double squares = 0.0;
        for (const auto* r : group) {
            squares += (r->ratio_full - mean) * (r->ratio_full - mean);
        }
        const TrialRecord& first = *group.front();
        rows.push_back(SummaryRow{first.scenario, first.n, first.arch, static_cast<int>(group.size()), mean,
                                  std::sqrt(squares / count), lo, hi, consistent / count});
    }
    return rows;
}

namespace {

// Explicit cut labels such as "gc:I=2,5" contain commas.
std::string csv_field(const std::string& text)
{
    return text.find(',') == std::string::npos ? text : '"' + text + '"';
}

} // namespace

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& records)
{
    const bool membership = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.in_a.has_value(); });
    out << "scenario,n,arch,trial,seed,p_r,p_bar_full,ratio_full,residual_norm,consistent";
    out << (membership ? ",in_a\n" : "\n");
    for (const auto& r : records) {
        out << r.scenario << ',' << r.n << ',' << csv_field(r.arch) << ',' << r.trial << ',' << r.seed << ','
            << format_number(r.p_r) << ',' << format_number(r.p_bar_full) << ',' << format_number(r.ratio_full)
            << ',' << format_number(r.residual_norm) << ',' << (r.consistent ? "true" : "false");
        if (membership) {
            out << ',' << (r.in_a ? (*r.in_a ? "true" : "false") : "");
        }
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    out << "scenario,n,arch,trials,mean_ratio,std_ratio,min_ratio,max_ratio,consistent_fraction\n";
    for (const auto& row : rows) {
        out << row.scenario << ',' << row.n << ',' << csv_field(row.arch) << ',' << row.trials << ','
            << format_number(row.mean_ratio) << ',' << format_number(row.std_ratio) << ','
            << format_number(row.min_ratio) << ',' << format_number(row.max_ratio) << ','
            << format_number(row.consistent_fraction) << '\n';
    }
}

} // namespace bdris
