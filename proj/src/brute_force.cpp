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

#include "bdris/errors.hpp"
#include "bdris/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bdris {

namespace {

// Each free entry is searched through u in (-pi/2, pi/2), B entry = tan(u) / z0,
// which maps the whole real line onto a bounded interval.
constexpr double kAngleLimit = 0.5 * std::numbers::pi - 1e-6;
constexpr int kRefinedStarts = 4;
constexpr int kGoldenSteps = 24;
constexpr double kMinWidth = 1e-9;

class PowerObjective {
public:
    PowerObjective(const ChannelPair& pair, const ArchitectureSpec& arch, double z0, std::int64_t budget)
        : pair_(pair), z0_(z0), budget_(budget), n_(arch.size())
    {
        for (int i = 0; i < n_; ++i) {
            for (int j = i; j < n_; ++j) {
                if (arch.in_pattern(i, j)) {
                    entries_.emplace_back(i, j);
                }
            }
        }
    }

    int dimension() const { return static_cast<int>(entries_.size()); }
    bool exhausted() const { return evaluations_ >= budget_; }
    std::int64_t evaluations() const { return evaluations_; }

    RealMatrix susceptance(const std::vector<double>& angles) const
    {
        RealMatrix b = RealMatrix::Zero(n_, n_);
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            const auto [i, j] = entries_[k];
            b(i, j) = b(j, i) = std::tan(angles[k]) / z0_;
        }
        return b;
    }

    // Returns 0 once the budget is spent, so callers never overrun it.
    double operator()(const std::vector<double>& angles)
    {
        if (exhausted()) {
            return 0.0;
        }
        ++evaluations_;
        const ComplexMat jzb = Complex(0.0, z0_) * susceptance(angles).cast<Complex>();
        const ComplexMat identity = ComplexMat::Identity(n_, n_);
        const ComplexMat theta = (identity + jzb).partialPivLu().solve(identity - jzb);
        const double p = std::norm(pair_.h_r().dot(theta * pair_.h_t()));
        return std::isfinite(p) ? p : 0.0;
    }

private:
    const ChannelPair& pair_;
    double z0_;
    std::int64_t budget_;
    int n_;
    std::vector<std::pair<int, int>> entries_;
    std::int64_t evaluations_ = 0;
};

struct Candidate {
    std::vector<double> angles;
    double power = 0.0;
    double width = 0.25 * std::numbers::pi;
};

// Golden-section maximization along one coordinate inside [u - width, u + width].
void refine_coordinate(PowerObjective& objective, Candidate& c, std::size_t k)
{
    constexpr double inv_phi = 0.6180339887498949;
    double lo = std::max(c.angles[k] - c.width, -kAngleLimit);
    double hi = std::min(c.angles[k] + c.width, kAngleLimit);
    std::vector<double> probe = c.angles;

    auto eval_at = [&](double u) {
        probe[k] = u;
        return objective(probe);
    };

    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = eval_at(x1);
    double f2 = eval_at(x2);
    for (int step = 0; step < kGoldenSteps && !objective.exhausted(); ++step) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval_at(x1);
        }
    }
    const double best_u = f1 >= f2 ? x1 : x2;
    const double best_f = std::max(f1, f2);
    if (best_f > c.power) {
        c.angles[k] = best_u;
        c.power = best_f;
    }
}

} // namespace

BruteForceResult brute_force_power_search(const ChannelPair& pair, const ArchitectureSpec& arch, double z0,
                                          std::int64_t budget, Rng& rng)
{
    if (budget < 1) {
        throw InputError("brute_force_power_search: budget must be >= 1");
    }
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        throw InputError("brute_force_power_search: z0 must be positive and finite");
    }
    if (arch.size() != pair.size()) {
        throw InputError("brute_force_power_search: architecture has " + std::to_string(arch.size())
                         + " elements but the channels have " + std::to_string(pair.size()));
    }

    PowerObjective objective(pair, arch, z0, budget);
    const int dim = objective.dimension();

    // B = 0 is in every pattern.
    std::vector<Candidate> pool;
    pool.push_back(Candidate{std::vector<double>(dim, 0.0), 0.0});
    pool.back().power = objective(pool.back().angles);

    const std::int64_t samples = std::max<std::int64_t>(1, budget / 2);
    for (std::int64_t s = 0; s < samples && !objective.exhausted(); ++s) {
        Candidate c{std::vector<double>(dim)};
        for (double& u : c.angles) {
            u = std::clamp(std::atan(rng.cauchy()), -kAngleLimit, kAngleLimit);
        }
        c.power = objective(c.angles);
        pool.push_back(std::move(c));
        if (pool.size() > 4 * kRefinedStarts) {
            std::partial_sort(pool.begin(), pool.begin() + kRefinedStarts, pool.end(),
                              [](const Candidate& x, const Candidate& y) { return x.power > y.power; });
            pool.resize(kRefinedStarts);
        }
    }
    std::sort(pool.begin(), pool.end(), [](const Candidate& x, const Candidate& y) { return x.power > y.power; });
    if (pool.size() > static_cast<std::size_t>(kRefinedStarts)) {
        pool.resize(kRefinedStarts);
    }

    while (!objective.exhausted() && dim > 0) {
        for (Candidate& c : pool) {
            for (int k = 0; k < dim && !objective.exhausted(); ++k) {
                refine_coordinate(objective, c, static_cast<std::size_t>(k));
            }
            c.width = c.width <= kMinWidth ? 0.25 * std::numbers::pi : 0.5 * c.width;
            if (objective.exhausted()) {
                break;
            }
        }
    }

    const Candidate& best = *std::max_element(
        pool.begin(), pool.end(), [](const Candidate& x, const Candidate& y) { return x.power < y.power; });
    SusceptanceMatrix best_b(arch, objective.susceptance(best.angles));
    const double p = received_power(pair, theta_from_susceptance(best_b, z0));
    return BruteForceResult{std::min(p, upper_bound_full(pair)), std::move(best_b), objective.evaluations()};
}

} // namespace bdris
