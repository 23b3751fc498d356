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

#pragma once

#include "bdris/architecture.hpp"
#include "bdris/channel.hpp"
#include "bdris/numeric.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bdris {

enum class Scenario { rayleigh, gc_favorable, gc_adversarial, tc_adversarial, los };

std::string_view to_string(Scenario scenario);
/// Throws InputError for unknown names.
Scenario parse_scenario(std::string_view name);

/// Group size used by the gc_* generators when none is given (2 favorable, 4 adversarial).
int default_group_size(Scenario scenario);

struct ExperimentConfig {
    Scenario scenario = Scenario::rayleigh;
    std::vector<int> sizes{8, 16, 24, 32, 40, 48, 56, 64};
    int trials = 1000;
    std::vector<ArchitectureChoice> archs;
    std::uint64_t seed = 0;
    double z0 = kDefaultZ0;
    std::optional<int> q_override;
    std::optional<int> group_size;
    bool check_membership = false;
    double rank_rtol = kDefaultRankRtol;
};

/// Throws InputError describing the first problem found.
void validate(const ExperimentConfig& config);

struct TrialRecord {
    std::string scenario; // tc_adversarial carries its swap extent, e.g. "tc_adversarial_q63"
    int n = 0;
    std::string arch;
    int trial = 0;
    std::uint64_t seed = 0;
    double p_r = 0.0;
    double p_bar_full = 0.0;
    double ratio_full = 0.0;
    double residual_norm = 0.0;
    bool consistent = true;
    std::optional<bool> in_a; // set when membership checking is on
};

/**
 * Per-trial seed: SplitMix64 finalizer applied to
 * seed ^ (size_index * 0x9E3779B97F4A7C15) ^ (trial_index * 0xBF58476D1CE4E5B9).
 */
std::uint64_t mix64(std::uint64_t seed, std::uint64_t size_index, std::uint64_t trial_index);

/// Draws one channel pair of the scenario. `q` and `group_size` fall back to the defaults.
ChannelPair generate_scenario_pair(Scenario scenario, int n, std::optional<int> q,
                                   std::optional<int> group_size, Rng& rng);

/// Scenario column value for size n.
std::string scenario_label(const ExperimentConfig& config, int n);

/**
 * One channel pair per (size, trial), shared by every architecture. Records
 * come back ordered by size, trial, then architecture, and do not depend on
 * the number of worker threads.
 */
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config, unsigned threads = 1);

struct SummaryRow {
    std::string scenario;
    int n = 0;
    std::string arch;
    int trials = 0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0; // population standard deviation
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double consistent_fraction = 0.0;
};

/// Groups by (scenario, n, arch) in order of first appearance. Throws InputError on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

} // namespace bdris
