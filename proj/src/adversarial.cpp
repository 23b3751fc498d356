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

#include "bdris/adversarial.hpp"

#include "bdris/architecture.hpp"
#include "bdris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bdris {

Proportionality real_proportional(Complex z1, Complex z2, double tol, double zero_floor)
{
    const double a1 = std::abs(z1);
    const double a2 = std::abs(z2);
    const bool zero1 = a1 <= zero_floor;
    const bool zero2 = a2 <= zero_floor;
    if (zero1 && zero2) {
        return {true, std::nullopt};
    }
    if (zero1 || zero2) {
        return {false, std::nullopt};
    }
    const double m = std::max(a1, a2);
    const Complex cross = z1 * std::conj(z2);
    if (std::abs(cross.imag()) <= tol * m * m) {
        return {true, cross.real() / (a2 * a2)};
    }
    return {false, std::nullopt};
}

namespace {

ComplexVec normalized_sum(const ChannelPair& pair)
{
    return pair.h_r_hat() + pair.h_t_hat();
}

double zero_floor_for(const ComplexVec& s)
{
    return kZeroFloorRtol * s.cwiseAbs().maxCoeff();
}

struct CutScan {
    std::vector<int> cuts;
    std::vector<double> gammas;
};

CutScan scan_cuts(const ChannelPair& pair, double tol)
{
    const ComplexVec s = normalized_sum(pair);
    const double floor = zero_floor_for(s);
    CutScan scan;
    for (Eigen::Index k = 0; k + 1 < s.size(); ++k) {
        const auto p = real_proportional(s[k], s[k + 1], tol, floor);
        if (p.proportional) {
            scan.cuts.push_back(static_cast<int>(k) + 1);
            // both-zero adjacency: any real gamma works, report 1
            scan.gammas.push_back(p.gamma.value_or(1.0));
        }
    }
    return scan;
}

} // namespace

std::vector<int> cut_set(const ChannelPair& pair, double tol)
{
    return scan_cuts(pair, tol).cuts;
}

C1Verdict in_c1(const ChannelPair& pair, const std::vector<int>& cuts, double tol)
{
    const int n = static_cast<int>(pair.size());
    const auto groups = partition_from_cuts(cuts, n);
    const ComplexVec r_hat = pair.h_r_hat();
    const ComplexVec t_hat = pair.h_t_hat();

    C1Verdict verdict;
    bool one_sided_zero = false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& g : groups) {
        // zero detection on the unit-norm vectors keeps the test scale-free
        const bool r_zero = r_hat.segment(g.begin, g.size()).norm() <= kZeroFloorRtol;
        const bool t_zero = t_hat.segment(g.begin, g.size()).norm() <= kZeroFloorRtol;
        const double nr = pair.h_r().segment(g.begin, g.size()).norm();
        const double nt = pair.h_t().segment(g.begin, g.size()).norm();
        if (r_zero && t_zero) {
            verdict.group_ratios.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        if (r_zero || t_zero) {
            one_sided_zero = true;
            verdict.group_ratios.push_back(r_zero ? 0.0 : std::numeric_limits<double>::infinity());
            continue;
        }
        const double ratio = nr / nt;
        verdict.group_ratios.push_back(ratio);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    verdict.holds = one_sided_zero || (hi > 0.0 && hi - lo > tol * hi);
    return verdict;
}

bool in_c2(const ChannelPair& pair, const std::vector<int>& cuts, double tol)
{
    if (cuts.empty()) {
        throw InputError("in_c2: the cut set must be nonempty");
    }
    validate_cuts(cuts, static_cast<int>(pair.size()));
    return cut_set(pair, tol) == cuts;
}

MembershipReport in_a(const ChannelPair& pair, double tol)
{
    CutScan scan = scan_cuts(pair, tol);
    C1Verdict c1 = in_c1(pair, scan.cuts, tol);
    MembershipReport report;
    report.in_a = !scan.cuts.empty() && c1.holds;
    report.cut_set = std::move(scan.cuts);
    report.gammas = std::move(scan.gammas);
    report.group_ratios = std::move(c1.group_ratios);
    report.c1_holds = c1.holds;
    return report;
}

bool in_a_bruteforce(const ChannelPair& pair, double tol)
{
    const int n = static_cast<int>(pair.size());
    if (n > kBruteForceMaxSize) {
        throw InputError("in_a_bruteforce: N = " + std::to_string(n) + " exceeds the enumeration limit of "
                         + std::to_string(kBruteForceMaxSize));
    }
    if (n < 2) {
        return false;
    }

    // Per-adjacency test straight from the C2 definition: a real gamma with
    // s_i = gamma s_{i+1} exists iff the projection residual vanishes.
    const ComplexVec s = normalized_sum(pair);
    const double floor = zero_floor_for(s);
    std::vector<bool> adjacent_proportional(static_cast<std::size_t>(n - 1));
    for (int k = 0; k + 1 < n; ++k) {
        const Complex z1 = s[k];
        const Complex z2 = s[k + 1];
        const bool zero1 = std::abs(z1) <= floor;
        const bool zero2 = std::abs(z2) <= floor;
        bool prop = false;
        if (zero1 || zero2) {
            prop = zero1 && zero2;
        } else {
            const double gamma = (z1 * std::conj(z2)).real() / std::norm(z2);
            const double m = std::max(std::abs(z1), std::abs(z2));
            prop = std::abs(z1 - gamma * z2) <= tol * m;
        }
        adjacent_proportional[static_cast<std::size_t>(k)] = prop;
    }

    bool member = false;
    const std::uint32_t subsets = 1u << (n - 1);
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        std::vector<int> cuts;
        bool c2 = true;
        for (int k = 0; k + 1 < n; ++k) {
            const bool selected = (mask >> k) & 1u;
            if (selected) {
                cuts.push_back(k + 1);
            }
            c2 = c2 && (selected == adjacent_proportional[static_cast<std::size_t>(k)]);
        }
        const bool c1 = in_c1(pair, cuts, tol).holds;
        member = member || (c1 && c2);
    }
    return member;
}

RealVec reduce_coupling(const LinearSystem& system, const RealVec& x, int cut, double gamma)
{
    const int n = system.size();
    if (x.size() != 2 * n - 1) {
        throw InputError("reduce_coupling: x must have 2N-1 = " + std::to_string(2 * n - 1) + " entries");
    }
    if (cut < 1 || cut > n - 1) {
        throw InputError("reduce_coupling: cut " + std::to_string(cut) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw InputError("reduce_coupling: gamma must be finite and nonzero");
    }
    const int i = cut - 1;
    const int c = system.coupling_column(i);
    RealVec reduced = x;
    reduced[i] += x[c] / gamma;
    reduced[i + 1] += gamma * x[c];
    reduced[c] = 0.0;
    return reduced;
}

} // namespace bdris
