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
#include <utility>
#include <vector>

namespace bdris {

/// Relative residual below which a configuration system counts as solved exactly.
inline constexpr double kConsistencyRtol = 1e-8;

/// Below this ||h_r_hat + h_t_hat|| a group is solved by phase alignment instead.
inline constexpr double kDegenerateGroupTol = 1e-10;

/// Largest single-element phase magnitude; Theta = -1 is only reached in the limit.
inline constexpr double kPhaseClamp = 3.141592653589793 - 1e-6;

/**
 * Real-stacked configuration system A x = b of a tridiagonal surface.
 *
 * With alpha = j z0 (h_r_hat + h_t_hat), requiring Theta h_t_hat = h_r_hat is
 * B alpha = h_t_hat - h_r_hat. x holds the N diagonal entries B(k,k) followed
 * by the N-1 couplings B(l,l+1); A = [Re A1, Re A2; Im A1, Im A2] with
 * A1 = diag(alpha) and A2 bidiagonal (alpha_{l+1} at row l, alpha_l at row l+1
 * of column l).
 */
struct LinearSystem {
    RealMatrix a;     // 2N x (2N-1)
    RealVec b;        // 2N
    ComplexVec alpha; // N

    int size() const { return static_cast<int>(alpha.size()); }
    /// Column of the coupling B(l, l+1), 0-based l.
    int coupling_column(int l) const { return size() + l; }
};

/// Tridiagonal system for a channel pair. Throws InputError for N < 2.
LinearSystem build_tc_system(const ChannelPair& pair, double z0);

/// Tridiagonal system from alpha and the complex right-hand side directly.
LinearSystem assemble_tc_system(const ComplexVec& alpha, const ComplexVec& rhs);

/// Tridiagonal susceptance matrix from an x laid out as in LinearSystem.
SusceptanceMatrix tc_susceptance_from_x(const RealVec& x, int n);

struct OptimizeResult {
    SusceptanceMatrix b_matrix;
    ScatteringMatrix theta;
    double p_r = 0.0;
    double p_bar_full = 0.0;
    double p_bar_arch = 0.0;  // bound for the architecture at hand
    double ratio_full = 0.0;  // p_r / p_bar_full
    double residual_norm = 0.0;
    bool consistent = true;
};

/// Min-norm least-squares solve of the tridiagonal system; exact whenever the
/// system is consistent, the least-squares configuration otherwise.
OptimizeResult optimize_tc(const ChannelPair& pair, double z0 = kDefaultZ0,
                           double rank_rtol = kDefaultRankRtol);

/**
 * Block-diagonal optimum over the groups induced by `arch.cuts()`.
 *
 * Each group is normalized and solved for its own dense symmetric B_g with
 * B_g alpha_g = beta_g by min-norm least squares, so every group maps its
 * h_t part onto its h_r part with zero phase and the group contributions add
 * up to the group-connected bound. residual_norm is the worst group residual.
 * Covers fully-connected (no cuts) and single-connected (all cuts) surfaces.
 */
OptimizeResult optimize_gc(const ChannelPair& pair, const ArchitectureSpec& arch, double z0 = kDefaultZ0,
                           double rank_rtol = kDefaultRankRtol);

OptimizeResult optimize_gc(const ChannelPair& pair, const std::vector<int>& cuts, double z0 = kDefaultZ0,
                           double rank_rtol = kDefaultRankRtol);

/// Closed-form phase alignment b_i = -tan(theta_i / 2) / z0, theta_i = arg h_r,i - arg h_t,i.
OptimizeResult optimize_sc(const ChannelPair& pair, double z0 = kDefaultZ0);

/// Dispatches on the architecture kind.
OptimizeResult optimize(const ChannelPair& pair, const ArchitectureSpec& arch, double z0 = kDefaultZ0,
                        double rank_rtol = kDefaultRankRtol);

struct BruteForceResult {
    double best_p_r = 0.0;
    SusceptanceMatrix best_b;
    std::int64_t evaluations = 0;
};

/**
 * Derivative-free search over every B with the architecture's pattern.
 *
 * Half the budget samples Cauchy-distributed entries; the best few samples are
 * then refined by coordinate-wise golden-section sweeps until the budget of
 * power evaluations is spent. Best effort only: it yields lower bounds on the
 * true optimum, never values above upper_bound_full. Intended for N <= 6.
 */
BruteForceResult brute_force_power_search(const ChannelPair& pair, const ArchitectureSpec& arch, double z0,
                                          std::int64_t budget, Rng& rng);

} // namespace bdris
