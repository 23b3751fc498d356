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

#include "bdris/optimize.hpp"

#include "bdris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bdris {

namespace {

using Unknowns = std::vector<std::pair<int, int>>;

// Real-stacked A for B alpha = rhs with B symmetric and only the listed
// (i <= j) entries free. Column k multiplies B(i, j) = B(j, i).
RealMatrix stack_system(const ComplexVec& alpha, const Unknowns& unknowns)
{
    const Eigen::Index n = alpha.size();
    ComplexMat complex_a = ComplexMat::Zero(n, static_cast<Eigen::Index>(unknowns.size()));
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
        const auto [i, j] = unknowns[k];
        const auto col = static_cast<Eigen::Index>(k);
        if (i == j) {
            complex_a(i, col) = alpha[i];
        } else {
            complex_a(i, col) = alpha[j];
            complex_a(j, col) = alpha[i];
        }
    }
    RealMatrix a(2 * n, complex_a.cols());
    a.topRows(n) = complex_a.real();
    a.bottomRows(n) = complex_a.imag();
    return a;
}

RealVec stack_rhs(const ComplexVec& rhs)
{
    const Eigen::Index n = rhs.size();
    RealVec b(2 * n);
    b.head(n) = rhs.real();
    b.tail(n) = rhs.imag();
    return b;
}

Unknowns tridiagonal_unknowns(int n)
{
    Unknowns u;
    for (int k = 0; k < n; ++k) {
        u.emplace_back(k, k);
    }
    for (int l = 0; l + 1 < n; ++l) {
        u.emplace_back(l, l + 1);
    }
    return u;
}

Unknowns dense_unknowns(int m)
{
    Unknowns u;
    for (int k = 0; k < m; ++k) {
        u.emplace_back(k, k);
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            u.emplace_back(i, j);
        }
    }
    return u;
}

double phase_aligning_susceptance(Complex hr, Complex ht, double z0)
{
    if (hr == Complex(0.0) || ht == Complex(0.0)) {
        return 0.0;
    }
    double theta = std::remainder(std::arg(hr) - std::arg(ht), 2.0 * std::numbers::pi);
    theta = std::clamp(theta, -kPhaseClamp, kPhaseClamp);
    return -std::tan(0.5 * theta) / z0;
}

bool is_consistent(double residual, const RealVec& b)
{
    return residual <= kConsistencyRtol * std::max(b.norm(), kTinyScale);
}

void require_z0(double z0)
{
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        throw InputError("z0 must be positive and finite");
    }
}

OptimizeResult finish(const ChannelPair& pair, SusceptanceMatrix b_matrix, double z0, double p_bar_arch,
                      double residual, bool consistent)
{
    ScatteringMatrix theta = theta_from_susceptance(b_matrix, z0);
    const double p_r = received_power(pair, theta);
    const double p_bar_full = upper_bound_full(pair);
    return OptimizeResult{std::move(b_matrix), std::move(theta), p_r,       p_bar_full,
                          p_bar_arch,          p_r / p_bar_full, residual, consistent};
}

} // namespace

LinearSystem assemble_tc_system(const ComplexVec& alpha, const ComplexVec& rhs)
{
    const auto n = static_cast<int>(alpha.size());
    if (n < 2) {
        throw InputError("tridiagonal system: N must be >= 2 (no couplings exist for N = "
                         + std::to_string(n) + ")");
    }
    if (rhs.size() != alpha.size()) {
        throw InputError("tridiagonal system: alpha and right-hand side differ in length");
    }
    return LinearSystem{stack_system(alpha, tridiagonal_unknowns(n)), stack_rhs(rhs), alpha};
}

LinearSystem build_tc_system(const ChannelPair& pair, double z0)
{
    require_z0(z0);
    const ComplexVec r = pair.h_r_hat();
    const ComplexVec t = pair.h_t_hat();
    const ComplexVec alpha = Complex(0.0, z0) * (r + t);
    return assemble_tc_system(alpha, t - r);
}

SusceptanceMatrix tc_susceptance_from_x(const RealVec& x, int n)
{
    if (n < 1 || x.size() != 2 * n - 1) {
        throw InputError("tridiagonal layout: x must have 2N-1 entries");
    }
    SusceptanceMatrix b(ArchitectureSpec::tree_tridiagonal(n));
    for (int k = 0; k < n; ++k) {
        b.set(k, k, x[k]);
    }
    for (int l = 0; l + 1 < n; ++l) {
        b.set(l, l + 1, x[n + l]);
    }
    return b;
}

OptimizeResult optimize_tc(const ChannelPair& pair, double z0, double rank_rtol)
{
    const LinearSystem system = build_tc_system(pair, z0);
    const LsSolution ls = min_norm_least_squares(system.a, system.b, rank_rtol);
    const int n = system.size();
    return finish(pair, tc_susceptance_from_x(ls.x, n), z0, upper_bound_full(pair), ls.residual_norm,
                  is_consistent(ls.residual_norm, system.b));
}

OptimizeResult optimize_gc(const ChannelPair& pair, const ArchitectureSpec& arch, double z0, double rank_rtol)
{
    require_z0(z0);
    if (arch.size() != pair.size()) {
        throw InputError("optimize_gc: architecture has " + std::to_string(arch.size())
                         + " elements but the channels have " + std::to_string(pair.size()));
    }
    if (arch.kind() == ArchitectureKind::tree_tridiagonal) {
        throw InputError("optimize_gc: tree-connected surfaces are handled by optimize_tc");
    }

    SusceptanceMatrix b_matrix(arch);
    double worst_residual = 0.0;
    bool consistent = true;

    for (const IndexRange& g : arch.partition()) {
        const ComplexVec hr = pair.h_r().segment(g.begin, g.size());
        const ComplexVec ht = pair.h_t().segment(g.begin, g.size());
        const double nr = hr.norm();
        const double nt = ht.norm();
        if (!(nr > 0.0) || !(nt > 0.0)) {
            continue; // group contributes nothing; leave B_g = 0
        }
        const ComplexVec r = hr / nr;
        const ComplexVec t = ht / nt;
        const ComplexVec sum = r + t;

        if (sum.norm() < kDegenerateGroupTol) {
            for (int k = 0; k < g.size(); ++k) {
                b_matrix.set(g.begin + k, g.begin + k, phase_aligning_susceptance(hr[k], ht[k], z0));
            }
            continue;
        }

        const Unknowns unknowns = dense_unknowns(g.size());
        const RealMatrix a = stack_system(Complex(0.0, z0) * sum, unknowns);
        const RealVec b = stack_rhs(t - r);
        const LsSolution ls = min_norm_least_squares(a, b, rank_rtol);
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            const auto [i, j] = unknowns[k];
            b_matrix.set(g.begin + i, g.begin + j, ls.x[static_cast<Eigen::Index>(k)]);
        }
        worst_residual = std::max(worst_residual, ls.residual_norm);
        consistent = consistent && is_consistent(ls.residual_norm, b);
    }

    return finish(pair, std::move(b_matrix), z0, upper_bound_gc(pair, arch.cuts()), worst_residual, consistent);
}

OptimizeResult optimize_gc(const ChannelPair& pair, const std::vector<int>& cuts, double z0, double rank_rtol)
{
    return optimize_gc(pair, ArchitectureSpec::group_connected(static_cast<int>(pair.size()), cuts), z0,
                       rank_rtol);
}

OptimizeResult optimize_sc(const ChannelPair& pair, double z0)
{
    require_z0(z0);
    const auto n = static_cast<int>(pair.size());
    SusceptanceMatrix b_matrix(ArchitectureSpec::single_connected(n));
    for (int k = 0; k < n; ++k) {
        b_matrix.set(k, k, phase_aligning_susceptance(pair.h_r()[k], pair.h_t()[k], z0));
    }
    return finish(pair, std::move(b_matrix), z0, upper_bound_sc(pair), 0.0, true);
}

OptimizeResult optimize(const ChannelPair& pair, const ArchitectureSpec& arch, double z0, double rank_rtol)
{
    if (arch.size() != pair.size()) {
        throw InputError("optimize: architecture '" + arch.label() + "' has " + std::to_string(arch.size())
                         + " elements but the channels have " + std::to_string(pair.size()));
    }
    switch (arch.kind()) {
    case ArchitectureKind::single_connected: return optimize_sc(pair, z0);
    case ArchitectureKind::tree_tridiagonal: return optimize_tc(pair, z0, rank_rtol);
    case ArchitectureKind::group_connected:
    case ArchitectureKind::fully_connected: return optimize_gc(pair, arch, z0, rank_rtol);
    }
    throw InputError("optimize: unknown architecture kind");
}

} // namespace bdris
