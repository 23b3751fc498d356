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

#include "bdris/numeric.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace bdris {

/**
 * Seeded 64-bit pseudo-random stream.
 *
 * Backed by std::mt19937_64, whose output sequence is fixed by the C++ standard.
 * Uniform and normal variates are derived here rather than through
 * <random> distributions, which are implementation-defined, so the same seed
 * yields the same doubles with every standard library.
 */
class Rng {
public:
    static constexpr std::string_view algorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1); 53 random mantissa bits.
    double uniform();
    /// Uniform on (lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();
    /// Circularly-symmetric complex Gaussian, zero mean, E|z|^2 = 1.
    Complex complex_normal();
    /// Standard Cauchy variate.
    double cauchy();

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/**
 * Tx->RIS channel h_t and RIS->Rx channel h_r of one RIS with N elements.
 * Transmit power is 1 and the direct Tx->Rx path is absent.
 */
class ChannelPair {
public:
    /// Throws InputError unless both vectors have the same length >= 1, finite
    /// entries and nonzero norm.
    ChannelPair(ComplexVec h_r, ComplexVec h_t);

    Eigen::Index size() const { return h_r_.size(); }
    const ComplexVec& h_r() const { return h_r_; }
    const ComplexVec& h_t() const { return h_t_; }

    ComplexVec h_r_hat() const;
    ComplexVec h_t_hat() const;

    /// The pair with (c_r * h_r, c_t * h_t).
    ChannelPair scaled(double c_r, double c_t) const;

private:
    ComplexVec h_r_;
    ComplexVec h_t_;
};

/// v / ||v||_2. Throws InputError on an empty or zero vector.
ComplexVec normalize(const ComplexVec& v);

ChannelPair gen_rayleigh(int n, Rng& rng);

/// Constant-modulus entries c1 e^{j phi_k}, c2 e^{j psi_k}; c1, c2 ~ U(0.1, 10).
ChannelPair gen_los(int n, Rng& rng);

/// Rayleigh h_r; h_t per group is gamma * ||h_r group|| times a random unit
/// direction, with one gamma ~ U(0.1, 10) shared by all groups.
ChannelPair gen_gc_favorable(int n, int group_size, Rng& rng);

/// h_r with U(-1, 1) real and imaginary parts; h_t is the concatenation of
/// a_g f_g / ||f_g|| with f_g drawn like h_r and a_g ~ U(0, 1).
ChannelPair gen_gc_adversarial(int n, int group_size, Rng& rng);

/// Largest odd q <= n - 1, i.e. every adjacent pair (1,2), (3,4), ... swapped.
int default_swap_extent(int n);

inline constexpr int kTcAdversarialRetries = 100;

/**
 * Unit-norm Rayleigh h_r and h_t equal to h_r with entries swapped inside the
 * 1-based pairs (i, i+1), i = 1, 3, ..., q; other entries are copied.
 *
 * Draws whose swapped pairs have (nearly) equal moduli, whose other adjacent
 * sums are accidentally real-proportional, or whose induced group ratios
 * coincide are redrawn, at most kTcAdversarialRetries times.
 */
ChannelPair gen_tc_adversarial(int n, int q, Rng& rng);

} // namespace bdris
