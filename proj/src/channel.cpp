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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace bdris {

double Rng::uniform()
{
    // 53-bit mantissa offset by half an ulp keeps both endpoints out.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal()
{
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

Complex Rng::complex_normal()
{
    // Box-Muller in polar form: |z|^2 ~ Exp(1), uniform phase.
    const double radius = std::sqrt(-std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return std::polar(radius, angle);
}

double Rng::cauchy()
{
    return std::tan(std::numbers::pi * (uniform() - 0.5));
}

ChannelPair::ChannelPair(ComplexVec h_r, ComplexVec h_t) : h_r_(std::move(h_r)), h_t_(std::move(h_t))
{
    if (h_r_.size() < 1 || h_r_.size() != h_t_.size()) {
        throw InputError("channel pair: h_r and h_t must have equal length >= 1 (got "
                         + std::to_string(h_r_.size()) + " and " + std::to_string(h_t_.size()) + ")");
    }
    if (!all_finite(h_r_) || !all_finite(h_t_)) {
        throw InputError("channel pair: non-finite entries");
    }
    if (!(h_r_.norm() > 0.0) || !(h_t_.norm() > 0.0)) {
        throw InputError("channel pair: h_r and h_t must have nonzero norm");
    }
}

ComplexVec ChannelPair::h_r_hat() const { return normalize(h_r_); }
ComplexVec ChannelPair::h_t_hat() const { return normalize(h_t_); }

ChannelPair ChannelPair::scaled(double c_r, double c_t) const
{
    return ChannelPair(h_r_ * c_r, h_t_ * c_t);
}

ComplexVec normalize(const ComplexVec& v)
{
    if (v.size() == 0) {
        throw InputError("normalize: empty vector");
    }
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InputError("normalize: vector has zero or non-finite norm");
    }
    return v / norm;
}

namespace {

void require_size(int n, const char* who)
{
    if (n < 1) {
        throw InputError(std::string(who) + ": n must be >= 1 (got " + std::to_string(n) + ")");
    }
}

void require_groups(int n, int group_size, const char* who)
{
    require_size(n, who);
    if (group_size < 1 || n % group_size != 0) {
        throw InputError(std::string(who) + ": group size " + std::to_string(group_size)
                         + " does not divide n = " + std::to_string(n));
    }
}

ComplexVec complex_normal_vec(int n, Rng& rng)
{
    ComplexVec v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = rng.complex_normal();
    }
    return v;
}

ComplexVec uniform_box_vec(int n, Rng& rng)
{
    ComplexVec v(n);
    for (int i = 0; i < n; ++i) {
        const double re = rng.uniform(-1.0, 1.0);
        const double im = rng.uniform(-1.0, 1.0);
        v[i] = Complex(re, im);
    }
    return v;
}

} // namespace

ChannelPair gen_rayleigh(int n, Rng& rng)
{
    require_size(n, "gen_rayleigh");
    ComplexVec h_r = complex_normal_vec(n, rng);
    ComplexVec h_t = complex_normal_vec(n, rng);
    return ChannelPair(std::move(h_r), std::move(h_t));
}

ChannelPair gen_los(int n, Rng& rng)
{
    require_size(n, "gen_los");
    const double c_r = rng.uniform(0.1, 10.0);
    const double c_t = rng.uniform(0.1, 10.0);
    ComplexVec h_r(n), h_t(n);
    for (int i = 0; i < n; ++i) {
        h_r[i] = std::polar(c_r, 2.0 * std::numbers::pi * rng.uniform());
    }
    for (int i = 0; i < n; ++i) {
        h_t[i] = std::polar(c_t, 2.0 * std::numbers::pi * rng.uniform());
    }
    return ChannelPair(std::move(h_r), std::move(h_t));
}

ChannelPair gen_gc_favorable(int n, int group_size, Rng& rng)
{
    require_groups(n, group_size, "gen_gc_favorable");
    ComplexVec h_r = complex_normal_vec(n, rng);
    const double gamma = rng.uniform(0.1, 10.0);
    ComplexVec h_t(n);
    for (int start = 0; start < n; start += group_size) {
        const ComplexVec direction = normalize(complex_normal_vec(group_size, rng));
        h_t.segment(start, group_size) = gamma * h_r.segment(start, group_size).norm() * direction;
    }
    return ChannelPair(std::move(h_r), std::move(h_t));
}

ChannelPair gen_gc_adversarial(int n, int group_size, Rng& rng)
{
    require_groups(n, group_size, "gen_gc_adversarial");
    ComplexVec h_r = uniform_box_vec(n, rng);
    ComplexVec h_t(n);
    for (int start = 0; start < n; start += group_size) {
        const ComplexVec f = uniform_box_vec(group_size, rng);
        const double scale = rng.uniform();
        h_t.segment(start, group_size) = scale * normalize(f);
    }
    return ChannelPair(std::move(h_r), std::move(h_t));
}

int default_swap_extent(int n)
{
    if (n < 2) {
        throw InputError("default_swap_extent: n must be >= 2");
    }
    return (n - 1) % 2 == 1 ? n - 1 : n - 2;
}

namespace {

constexpr double kDegenerateRtol = 1e-6;

// True if the draw is a generic member of the adversarial set with cut set
// {1, 3, ..., q}; see gen_tc_adversarial.
bool accept_tc_draw(const ComplexVec& r, const ComplexVec& t, int q)
{
    const int n = static_cast<int>(r.size());
    const ComplexVec s = r + t;
    const double s_scale = s.cwiseAbs().maxCoeff();

    for (int k = 0; k < n; ++k) {
        if (std::abs(s[k]) <= kDegenerateRtol * s_scale) {
            return false;
        }
    }
    // 0-based index k stands for the 1-based adjacency (k+1, k+2).
    for (int k = 0; k + 1 < n; ++k) {
        const bool is_cut = k < q && k % 2 == 0;
        if (is_cut) {
            const double a = std::abs(r[k]);
            const double b = std::abs(r[k + 1]);
            if (std::abs(a - b) <= kDegenerateRtol * std::max(a, b)) {
                return false;
            }
        } else {
            const double m = std::max(std::abs(s[k]), std::abs(s[k + 1]));
            if (std::abs(std::imag(s[k] * std::conj(s[k + 1]))) <= kDegenerateRtol * m * m) {
                return false;
            }
        }
    }

    // Group ratios over the partition induced by cuts {1, 3, ..., q}.
    std::vector<double> ratios;
    int begin = 0;
    auto close_group = [&](int end) {
        ratios.push_back(r.segment(begin, end - begin).norm() / t.segment(begin, end - begin).norm());
        begin = end;
    };
    for (int cut = 1; cut <= q; cut += 2) {
        close_group(cut);
    }
    close_group(n);
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    return *hi - *lo > kDegenerateRtol * *hi;
}

} // namespace

ChannelPair gen_tc_adversarial(int n, int q, Rng& rng)
{
    if (n < 2) {
        throw InputError("gen_tc_adversarial: n must be >= 2 (got " + std::to_string(n) + ")");
    }
    if (q < 1 || q >= n || q % 2 == 0) {
        throw InputError("gen_tc_adversarial: q must be odd with 1 <= q < n (got q = "
                         + std::to_string(q) + ", n = " + std::to_string(n) + ")");
    }
    for (int attempt = 0; attempt < kTcAdversarialRetries; ++attempt) {
        const ComplexVec r = normalize(complex_normal_vec(n, rng));
        ComplexVec t = r;
        for (int k = 0; k < q; k += 2) {
            std::swap(t[k], t[k + 1]);
        }
        if (accept_tc_draw(r, t, q)) {
            return ChannelPair(r, t);
        }
    }
    throw NumericalError("gen_tc_adversarial: no generic draw within "
                         + std::to_string(kTcAdversarialRetries) + " attempts");
}

} // namespace bdris
