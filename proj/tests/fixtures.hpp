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

// Shared fixtures for the unit tests and the acceptance runner.

#pragma once

#include "bdris/architecture.hpp"
#include "bdris/channel.hpp"

#include <cmath>
#include <complex>

namespace bdris::testing {

using namespace std::complex_literals;

/// The N = 2 pair h_R = (2j, 3+j), h_T = (3+j, 2j)/2.
inline ChannelPair worked_pair()
{
    ComplexVec h_r(2);
    ComplexVec h_t(2);
    h_r << 2.0i, 3.0 + 1.0i;
    h_t << 0.5 * (3.0 + 1.0i), 0.5 * 2.0i;
    return {h_r, h_t};
}

inline ChannelPair unit_pair(int n = 2)
{
    ComplexVec e = ComplexVec::Zero(n);
    e(0) = 1.0;
    return {e, e};
}

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Random real symmetric matrix with entries uniform in [-scale, scale] on the pattern of `arch`.
inline RealMatrix random_patterned(const ArchitectureSpec& arch, double scale, Rng& rng)
{
    const int n = arch.size();
    RealMatrix b = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (arch.in_pattern(i, j)) {
                b(i, j) = b(j, i) = rng.uniform(-scale, scale);
            }
        }
    }
    return b;
}

} // namespace bdris::testing
