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

#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace bdris;
using namespace bdris::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<ArchitectureSpec> archs_for(int n)
{
    std::vector<ArchitectureSpec> out{ArchitectureSpec::single_connected(n), ArchitectureSpec::fully_connected(n)};
    if (n >= 2) {
        out.push_back(ArchitectureSpec::tree_tridiagonal(n));
    }
    if (n % 2 == 0) {
        out.push_back(ArchitectureSpec::uniform_groups(n, 2));
    }
    if (n % 4 == 0) {
        out.push_back(ArchitectureSpec::uniform_groups(n, 4));
    }
    if (n >= 5) {
        out.push_back(ArchitectureSpec::group_connected(n, {1, 4}));
    }
    return out;
}

ChannelPair any_pair(int kind, int n, Rng& rng)
{
    switch (kind % 4) {
    case 0: return gen_rayleigh(n, rng);
    case 1: return gen_los(n, rng);
    case 2: return n % 2 == 0 ? gen_gc_adversarial(n, 2, rng) : gen_rayleigh(n, rng);
    default: return n >= 2 ? gen_tc_adversarial(n, default_swap_extent(n), rng) : gen_rayleigh(n, rng);
    }
}

} // namespace

TEST_CASE("tridiagonal system layout")
{
    const LinearSystem s = build_tc_system(worked_pair(), 1.0);
    REQUIRE(s.a.rows() == 4);
    REQUIRE(s.a.cols() == 3);
    REQUIRE(s.b.size() == 4);
    const double k = 1.0 / std::sqrt(14.0);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(s.alpha(i) - k * Complex(-3.0, 3.0)) <= 1e-15);
    }
    RealMatrix a(4, 3);
    a << -3, 0, -3, 0, -3, -3, 3, 0, 3, 0, 3, 3;
    CHECK((s.a - k * a).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((s.b - k * RealVec{{3.0, -3.0, -1.0, 1.0}}).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(s.coupling_column(0) == 2);

    CHECK_THROWS_AS(build_tc_system(unit_pair(1), 1.0), InputError);
}

TEST_CASE("coupling columns have four nonzeros")
{
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t;
        const LinearSystem s = build_tc_system(gen_rayleigh(n, rng), 50.0);
        CHECK(s.a.rows() == 2 * n);
        CHECK(s.a.cols() == 2 * n - 1);
        for (int l = 0; l + 1 < n; ++l) {
            const RealVec col = s.a.col(s.coupling_column(l));
            for (int row = 0; row < 2 * n; ++row) {
                const bool expected = row == l || row == l + 1 || row == n + l || row == n + l + 1;
                CHECK((col(row) != 0.0) == expected);
            }
            // alpha_{l+1} sits on row l and alpha_l on row l+1.
            CHECK(col(l) == s.alpha(l + 1).real());
            CHECK(col(n + l + 1) == s.alpha(l).imag());
        }
    }
}

TEST_CASE("worked pair: tridiagonal least squares trace")
{
    const ChannelPair p = worked_pair();
    const OptimizeResult r = optimize_tc(p, 1.0);
    CHECK_THAT(r.b_matrix(0, 0), WithinAbs(-2.0 / 3.0, 1e-12));
    CHECK_THAT(r.b_matrix(1, 1), WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(r.b_matrix(0, 1), WithinAbs(0.0, 1e-12));
    CHECK_THAT(r.residual_norm * r.residual_norm, WithinAbs(2.0 / 7.0, 1e-9));
    CHECK_THAT(r.p_r, WithinAbs(6724.0 / 169.0, 1e-6));
    CHECK_THAT(r.ratio_full, WithinAbs(6724.0 / 169.0 / 49.0, 1e-9));
    CHECK_FALSE(r.consistent);
    CHECK_THAT(r.p_bar_full, WithinRel(49.0, 1e-14));
}

TEST_CASE("worked pair: single-connected closed form")
{
    const ChannelPair p = worked_pair();
    for (const double z0 : {1.0, 50.0}) {
        const OptimizeResult sc = optimize_sc(p, z0);
        CHECK_THAT(sc.p_r, WithinRel(40.0, 1e-9));
        CHECK(sc.p_r <= 40.0 * (1.0 + 1e-12));
        CHECK_THAT(sc.ratio_full, WithinAbs(40.0 / 49.0, 1e-9));
        CHECK_THAT(sc.p_bar_arch, WithinRel(40.0, 1e-14));
        CHECK(sc.residual_norm == 0.0);

        const OptimizeResult gc = optimize_gc(p, std::vector<int>{1}, z0);
        CHECK_THAT(gc.p_r, WithinRel(40.0, 1e-9));
        CHECK(gc.consistent);
    }
}

TEST_CASE("single-connected special cases")
{
    const OptimizeResult e = optimize_sc(unit_pair(2), 50.0);
    CHECK(e.b_matrix.values().isZero());
    CHECK_THAT(e.p_r, WithinRel(1.0, 1e-15));

    // Anti-aligned phase sits at the clamp.
    ComplexVec r(1);
    ComplexVec t(1);
    r << 1.0;
    t << -1.0;
    const OptimizeResult flip = optimize_sc(ChannelPair(r, t), 50.0);
    CHECK(flip.p_r >= 1.0 - 1e-6);

    // A zero entry contributes nothing and gets B = 0.
    ComplexVec r2(2);
    ComplexVec t2(2);
    r2 << 0.0, Complex(0.0, 1.0);
    t2 << 1.0, 1.0;
    const OptimizeResult z = optimize_sc(ChannelPair(r2, t2), 50.0);
    CHECK(z.b_matrix(0, 0) == 0.0);
    CHECK_THAT(z.p_r, WithinRel(1.0, 1e-9));

    CHECK_THROWS_AS(optimize_sc(unit_pair(2), 0.0), InputError);
}

TEST_CASE("line-of-sight pairs are solved by the single-connected surface")
{
    Rng rng(6);
    for (int t = 0; t < 100; ++t) {
        const OptimizeResult r = optimize_sc(gen_los(1 + t % 32, rng), 50.0);
        CHECK(r.ratio_full >= 1.0 - 1e-6);
    }
}

TEST_CASE("favorable group pairs reach the full bound")
{
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 * (1 + t % 32);
        const ChannelPair p = gen_gc_favorable(n, 2, rng);
        const OptimizeResult gc = optimize_gc(p, uniform_cuts(n, 2), 50.0);
        CHECK(gc.p_r >= 0.999 * gc.p_bar_full);
        CHECK(gc.consistent);
        const OptimizeResult tc = optimize_tc(p, 50.0);
        CHECK(tc.consistent);
        CHECK(tc.ratio_full >= 0.999);
    }
}

TEST_CASE("rayleigh pairs: group optimizer reaches its bound")
{
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        const ChannelPair p = gen_rayleigh(8, rng);
        const OptimizeResult r = optimize_gc(p, std::vector<int>{4}, 50.0);
        CHECK(r.consistent);
        CHECK(r.p_r >= (1.0 - 1e-6) * upper_bound_gc(p, {4}));
    }
}

TEST_CASE("rayleigh pairs: tridiagonal optimizer is consistent")
{
    Rng rng(5);
    const OptimizeResult r16 = optimize_tc(gen_rayleigh(16, rng), 50.0);
    CHECK(r16.consistent);
    CHECK(r16.ratio_full >= 1.0 - 1e-6);

    int good = 0;
    int total = 0;
    Rng pool(99);
    for (int t = 0; t < 1000; ++t) {
        const int n = 8 * (1 + t % 8);
        const OptimizeResult r = optimize_tc(gen_rayleigh(n, pool), 50.0);
        good += (r.consistent && r.ratio_full >= 1.0 - 1e-6) ? 1 : 0;
        ++total;
        if (r.consistent) {
            CHECK(r.ratio_full >= 1.0 - 1e-6);
        }
    }
    CHECK(good >= 998);
}

TEST_CASE("degenerate group falls back to phase alignment")
{
    ComplexVec r(2);
    r << Complex(1.0, 0.5), Complex(-0.3, 2.0);
    const ChannelPair p(r, -2.0 * r);
    const OptimizeResult gc = optimize_gc(p, std::vector<int>{}, 50.0);
    CHECK_THAT(gc.p_r, WithinRel(upper_bound_sc(p), 1e-9));
    const OptimizeResult gc1 = optimize_gc(p, std::vector<int>{}, 1.0);
    CHECK_THAT(gc1.p_r, WithinRel(gc.p_r, 1e-8));
}

TEST_CASE("optimizer properties")
{
    Rng rng(77);
    for (int t = 0; t < 250; ++t) {
        const int n = 1 + static_cast<int>(rng.uniform() * 24);
        const ChannelPair p = any_pair(t, n, rng);
        const double c_r = std::exp(rng.uniform(-3.0, 3.0));
        const double c_t = std::exp(rng.uniform(-3.0, 3.0));
        const ChannelPair scaled = p.scaled(c_r, c_t);
        for (const auto& arch : archs_for(n)) {
            INFO("trial " << t << " n " << n << " arch " << arch.label());
            const OptimizeResult r50 = optimize(p, arch, 50.0);
            const OptimizeResult r1 = optimize(p, arch, 1.0);
            const OptimizeResult rs = optimize(scaled, arch, 50.0);

            // Bound chain.
            CHECK(r50.p_r >= 0.0);
            CHECK(r50.p_r <= r50.p_bar_full * (1.0 + 1e-10));
            CHECK(r50.p_bar_arch <= r50.p_bar_full * (1.0 + 1e-12));
            if (arch.kind() != ArchitectureKind::tree_tridiagonal || r50.consistent) {
                CHECK(r50.p_r <= r50.p_bar_arch * (1.0 + 1e-9));
            }
            if (arch.kind() == ArchitectureKind::single_connected) {
                CHECK(r50.p_r >= (1.0 - 1e-6) * r50.p_bar_arch);
            }
            if (r50.consistent) {
                CHECK(r50.ratio_full >= (1.0 - 1e-6) * r50.p_bar_arch / r50.p_bar_full);
            }

            // End-to-end coherence.
            const double recomputed = received_power(p, theta_from_susceptance(r50.b_matrix, 50.0));
            CHECK(rel_diff(recomputed, r50.p_r) <= 1e-10);
            CHECK(rel_diff(r50.ratio_full, r50.p_r / r50.p_bar_full) <= 1e-15);

            // Reference impedance and channel scaling invariances.
            CHECK(rel_diff(r1.p_r, r50.p_r) <= 1e-8);
            CHECK(r1.consistent == r50.consistent);
            CHECK(std::abs(rs.ratio_full - r50.ratio_full) <= 1e-10);
            CHECK(rel_diff(rs.p_r, r50.p_r * c_r * c_r * c_t * c_t) <= 1e-9);
        }
    }
}

TEST_CASE("optimizer input errors")
{
    const ChannelPair p = worked_pair();
    CHECK_THROWS_AS(optimize(p, ArchitectureSpec::fully_connected(3)), InputError);
    CHECK_THROWS_AS(optimize_gc(p, ArchitectureSpec::tree_tridiagonal(2)), InputError);
    CHECK_THROWS_AS(optimize_gc(p, std::vector<int>{2}), InputError);
    CHECK_THROWS_AS(optimize_tc(p, -1.0), InputError);
    CHECK_THROWS_AS(optimize_tc(unit_pair(1)), InputError);
}

TEST_CASE("brute-force search")
{
    const ChannelPair p = worked_pair();

    SECTION("single-connected pattern finds the closed-form optimum")
    {
        Rng rng(1);
        const auto r = brute_force_power_search(p, ArchitectureSpec::single_connected(2), 1.0, 100000, rng);
        CHECK(r.best_p_r >= 40.0 * (1.0 - 1e-3));
        CHECK(r.best_p_r <= 40.0 * (1.0 + 1e-9));
        CHECK(r.evaluations <= 100000);
    }
    SECTION("tridiagonal pattern is at least the least-squares value")
    {
        Rng rng(2);
        const auto r = brute_force_power_search(p, ArchitectureSpec::tree_tridiagonal(2), 1.0, 100000, rng);
        CHECK(r.best_p_r >= 6724.0 / 169.0 - 1e-6);
        CHECK(r.best_p_r <= 49.0 * (1.0 + 1e-12));
        const double check = received_power(p, theta_from_susceptance(r.best_b, 1.0));
        CHECK(rel_diff(check, r.best_p_r) <= 1e-10);
    }
    SECTION("B = 0 is always available")
    {
        Rng rng(3);
        for (const auto& arch : archs_for(2)) {
            const auto r = brute_force_power_search(unit_pair(2), arch, 50.0, 1, rng);
            CHECK(r.best_p_r >= 1.0 - 1e-6);
        }
    }
    SECTION("input errors")
    {
        Rng rng(4);
        CHECK_THROWS_AS(brute_force_power_search(p, ArchitectureSpec::tree_tridiagonal(2), 1.0, 0, rng), InputError);
        CHECK_THROWS_AS(brute_force_power_search(p, ArchitectureSpec::tree_tridiagonal(3), 1.0, 10, rng), InputError);
    }
}
