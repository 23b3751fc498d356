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

#include "bdris/channel.hpp"
#include "bdris/optimize.hpp"

#include <optional>
#include <vector>

namespace bdris {

inline constexpr double kProportionalityTol = 1e-9;
/// Entries of h_r_hat + h_t_hat below this fraction of its largest entry count as zero.
inline constexpr double kZeroFloorRtol = 1e-12;

struct Proportionality {
    bool proportional = false;
    std::optional<double> gamma; // z1 = gamma * z2; empty when both are zero
};

/**
 * Whether z1 = gamma * z2 for some real gamma.
 *
 * With m = max(|z1|, |z2|): both magnitudes <= zero_floor is proportional with
 * any gamma; exactly one of them <= zero_floor is not (gamma would be 0 or
 * undefined); otherwise the test is |Im(z1 conj(z2))| <= tol * m^2.
 */
Proportionality real_proportional(Complex z1, Complex z2, double tol = kProportionalityTol,
                                  double zero_floor = 0.0);

/// Cut set I* = {i : s_i real-proportional to s_{i+1}}, s = h_r_hat + h_t_hat, 1-based.
std::vector<int> cut_set(const ChannelPair& pair, double tol = kProportionalityTol);

struct C1Verdict {
    bool holds = false;
    /// ||h_r[J_g]|| / ||h_t[J_g]|| per group; NaN for an all-zero group, 0 or +inf
    /// when only one side vanishes.
    std::vector<double> group_ratios;
};

/// Membership in C1(cuts): no single gamma > 0 matches every group norm ratio.
C1Verdict in_c1(const ChannelPair& pair, const std::vector<int>& cuts, double tol = kProportionalityTol);

/// Membership in C2(cuts), i.e. cut_set(pair) == cuts. Throws InputError on empty cuts.
bool in_c2(const ChannelPair& pair, const std::vector<int>& cuts, double tol = kProportionalityTol);

struct MembershipReport {
    bool in_a = false;
    std::vector<int> cut_set;
    std::vector<double> gammas; // s_i = gamma_i s_{i+1} at each cut
    std::vector<double> group_ratios;
    bool c1_holds = false;
};

/**
 * Membership in the adversarial set of the tridiagonal surface.
 *
 * A pair lies in C2(I) only for I = I*, so the union over all nonempty cut
 * sets reduces to the single test I* nonempty and the pair in C1(I*).
 */
MembershipReport in_a(const ChannelPair& pair, double tol = kProportionalityTol);

inline constexpr int kBruteForceMaxSize = 16;

/// The same verdict by enumerating all 2^(N-1) - 1 nonempty cut sets. N <= 16.
bool in_a_bruteforce(const ChannelPair& pair, double tol = kProportionalityTol);

/**
 * Folds the coupling B(i, i+1) (1-based cut i) into the two diagonal entries.
 *
 * When alpha_i = gamma * alpha_{i+1} the coupling column equals
 * c_i / gamma + gamma * c_{i+1}, so x' with x'_i = x_i + x_c / gamma,
 * x'_{i+1} = x_{i+1} + gamma * x_c and x'_c = 0 satisfies A x' = A x.
 */
RealVec reduce_coupling(const LinearSystem& system, const RealVec& x, int cut, double gamma);

} // namespace bdris
