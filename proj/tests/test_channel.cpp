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

#include "bdris/channel.hpp"
#include "bdris/errors.hpp"
#include "bdris/json_io.hpp"

#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <numbers>

using namespace bdris;
using namespace bdris::testing;
using Catch::Matchers::WithinAbs;

namespace {

bool same_pair(const ChannelPair& a, const ChannelPair& b)
{
    return a.size() == b.size() && a.h_r() == b.h_r() && a.h_t() == b.h_t();
}

} // namespace

TEST_CASE("rng is reproducible and well formed")
{
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = c.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
    // The first output of mt19937_64 with the default seed is fixed by the C++ standard.
    Rng standard(5489);
    CHECK(standard.next_u64() == 14514284786278117030ULL);
}

TEST_CASE("normalize")
{
    ComplexVec v(2);
    v << 3.0, 4.0i;
    const ComplexVec u = normalize(v);
    CHECK_THAT(std::abs(u(0) - 0.6), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(u(1) - 0.8i), WithinAbs(0.0, 1e-15));

    ComplexVec w(2);
    w << 0.5 * (3.0 + 1.0i), 1.0i;
    const ComplexVec uw = normalize(w);
    const double k = 1.0 / std::sqrt(14.0);
    CHECK(std::abs(uw(0) - k * (3.0 + 1.0i)) <= 1e-15);
    CHECK(std::abs(uw(1) - k * 2.0i) <= 1e-15);

    CHECK_THROWS_AS(normalize(ComplexVec::Zero(2)), InputError);
}

TEST_CASE("normalize is idempotent with unit output norm")
{
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const ChannelPair p = gen_rayleigh(1 + t % 40, rng);
        const ComplexVec u = normalize(p.h_r() * std::exp(rng.uniform(-20.0, 20.0)));
        CHECK_THAT(u.norm(), WithinAbs(1.0, 1e-12));
        CHECK((normalize(u) - u).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("channel pair validation")
{
    CHECK_THROWS_AS(ChannelPair(ComplexVec::Ones(2), ComplexVec::Ones(3)), InputError);
    CHECK_THROWS_AS(ChannelPair(ComplexVec(0), ComplexVec(0)), InputError);
    CHECK_THROWS_AS(ChannelPair(ComplexVec::Zero(2), ComplexVec::Ones(2)), InputError);
    ComplexVec bad = ComplexVec::Ones(2);
    bad(1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ChannelPair(bad, ComplexVec::Ones(2)), InputError);
}

TEST_CASE("rayleigh generator")
{
    Rng a(7);
    Rng b(7);
    CHECK(same_pair(gen_rayleigh(4, a), gen_rayleigh(4, b)));
    CHECK_THROWS_AS(gen_rayleigh(0, a), InputError);

    Rng rng(2024);
    double power = 0.0;
    double modulus = 0.0;
    Complex mean = 0.0;
    int count = 0;
    for (int t = 0; t < 50; ++t) {
        const ChannelPair p = gen_rayleigh(100, rng);
        for (const ComplexVec* v : {&p.h_r(), &p.h_t()}) {
            for (Eigen::Index i = 0; i < v->size(); ++i) {
                power += std::norm((*v)(i));
                modulus += std::abs((*v)(i));
                mean += (*v)(i);
                ++count;
            }
        }
    }
    REQUIRE(count == 10000);
    mean /= count;
    const double variance = power / count - std::norm(mean);
    CHECK_THAT(variance, WithinAbs(1.0, 0.05));
    CHECK_THAT(modulus / count, WithinAbs(std::sqrt(std::numbers::pi) / 2.0, 0.03));
}

TEST_CASE("line-of-sight generator")
{
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const ChannelPair p = gen_los(1 + t % 16, rng);
        const double r0 = std::abs(p.h_r()(0));
        const double t0 = std::abs(p.h_t()(0));
        CHECK(r0 > 0.1);
        CHECK(r0 < 10.0);
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            CHECK_THAT(std::abs(p.h_r()(i)), WithinAbs(r0, 1e-12 * r0));
            CHECK_THAT(std::abs(p.h_t()(i)), WithinAbs(t0, 1e-12 * t0));
        }
    }
    Rng a(3);
    Rng b(3);
    CHECK(same_pair(gen_los(1, a), gen_los(1, b)));
    CHECK_THROWS_AS(gen_los(0, a), InputError);
}

TEST_CASE("favorable group generator")
{
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 * (1 + t % 16);
        const ChannelPair p = gen_gc_favorable(n, 2, rng);
        const double ref = p.h_t().segment(0, 2).norm() / p.h_r().segment(0, 2).norm();
        for (int g = 1; g < n / 2; ++g) {
            const double ratio = p.h_t().segment(2 * g, 2).norm() / p.h_r().segment(2 * g, 2).norm();
            CHECK(rel_diff(ratio, ref) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(gen_gc_favorable(6, 4, rng), InputError);
}

TEST_CASE("adversarial group generator")
{
    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        const ChannelPair p = gen_gc_adversarial(16, 4, rng);
        CHECK(p.h_r().real().cwiseAbs().maxCoeff() < 1.0);
        CHECK(p.h_r().imag().cwiseAbs().maxCoeff() < 1.0);
        for (int g = 0; g < 4; ++g) {
            const double a = p.h_t().segment(4 * g, 4).norm();
            CHECK(a > 0.0);
            CHECK(a < 1.0);
        }
    }
    Rng a(1);
    Rng b(1);
    CHECK(same_pair(gen_gc_adversarial(8, 4, a), gen_gc_adversarial(8, 4, b)));
    CHECK_THROWS_AS(gen_gc_adversarial(10, 4, a), InputError);
}

TEST_CASE("swapped-pair generator")
{
    CHECK(default_swap_extent(2) == 1);
    CHECK(default_swap_extent(7) == 5);
    CHECK(default_swap_extent(64) == 63);

    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 15;
        const int q = 1 + 2 * (t % ((n - 1 + 1) / 2));
        if (q >= n) {
            continue;
        }
        const ChannelPair p = gen_tc_adversarial(n, q, rng);
        const ComplexVec r = p.h_r_hat();
        const ComplexVec& h_t = p.h_t();
        CHECK_THAT(h_t.norm(), WithinAbs(1.0, 1e-12));
        for (int i = 0; i < n; ++i) {
            // 0-based: pairs (i, i+1) are swapped for even i < q.
            int partner = i;
            if (i < q + 1) {
                partner = i % 2 == 0 ? i + 1 : i - 1;
            }
            CHECK(std::abs(h_t(i) - r(partner)) <= 1e-15);
        }
    }
    CHECK_THROWS_AS(gen_tc_adversarial(4, 2, rng), InputError);
    CHECK_THROWS_AS(gen_tc_adversarial(4, 5, rng), InputError);
    CHECK_THROWS_AS(gen_tc_adversarial(4, 4, rng), InputError);
    CHECK_THROWS_AS(gen_tc_adversarial(1, 1, rng), InputError);
}

TEST_CASE("worked pair is a swapped pair")
{
    const ChannelPair p = worked_pair();
    const ComplexVec r = p.h_r_hat();
    const ComplexVec t = p.h_t_hat();
    CHECK(std::abs(t(0) - r(1)) <= 1e-15);
    CHECK(std::abs(t(1) - r(0)) <= 1e-15);
}

TEST_CASE("channel file round trip")
{
    Rng rng(77);
    const ChannelPair p = gen_rayleigh(5, rng);
    const Json doc = channel_to_json(p);
    CHECK(doc.at("n") == 5);
    CHECK(same_pair(channel_from_json(doc), p));

    const auto path = std::filesystem::temp_directory_path() / "bdris_channel_roundtrip.json";
    write_channel_file(path, p);
    CHECK(same_pair(read_channel_file(path), p));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"n": 1, "h_r": [[1, 0]]})")), InputError);
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"n": 2, "h_r": [[1, 0]], "h_t": [[1, 0]]})")), InputError);
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"n": 1, "h_r": [[1]], "h_t": [[1, 0]]})")), InputError);
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"n": 1, "h_r": [[0, 0]], "h_t": [[1, 0]]})")), InputError);
    CHECK_THROWS_AS(read_channel_file("/nonexistent/bdris.json"), InputError);
}

TEST_CASE("every generator is deterministic and finite")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng a(seed);
        Rng b(seed);
        const ChannelPair ps[] = {gen_rayleigh(8, a), gen_los(8, a), gen_gc_favorable(8, 2, a),
                                  gen_gc_adversarial(8, 4, a), gen_tc_adversarial(8, 7, a)};
        const ChannelPair qs[] = {gen_rayleigh(8, b), gen_los(8, b), gen_gc_favorable(8, 2, b),
                                  gen_gc_adversarial(8, 4, b), gen_tc_adversarial(8, 7, b)};
        for (int k = 0; k < 5; ++k) {
            CHECK(same_pair(ps[k], qs[k]));
            CHECK(all_finite(ps[k].h_r()));
            CHECK(all_finite(ps[k].h_t()));
        }
    }
}
