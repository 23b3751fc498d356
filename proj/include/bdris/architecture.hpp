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
#include "bdris/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bdris {

/// Z0 used when the caller does not choose one. Achieved powers do not depend on it.
inline constexpr double kDefaultZ0 = 50.0;

enum class ArchitectureKind { single_connected, group_connected, tree_tridiagonal, fully_connected };

std::string_view to_string(ArchitectureKind kind);

/// Contiguous 0-based element range [begin, end).
struct IndexRange {
    int begin = 0;
    int end = 0;
    int size() const { return end - begin; }
    bool operator==(const IndexRange&) const = default;
};

/// Throws InputError unless cuts are strictly increasing and within [1, n-1].
void validate_cuts(const std::vector<int>& cuts, int n);

/**
 * Groups induced by a cut set: cut i (1-based) separates element i from i+1,
 * so {i1 < i2 < ...} yields {1..i1}, {i1+1..i2}, ..., {i_last+1..n}, returned
 * here as 0-based half-open ranges.
 */
std::vector<IndexRange> partition_from_cuts(const std::vector<int>& cuts, int n);

/// Cuts {k, 2k, ...} for groups of k consecutive elements; k must divide n.
std::vector<int> uniform_cuts(int n, int group_size);

/// All cuts {1, ..., n-1}.
std::vector<int> singleton_cuts(int n);

/**
 * Architecture of an N-element RIS: its kind and, for group-connected
 * surfaces, the cut set. Single- and fully-connected are exposed as the
 * group-connected extremes through cuts()/partition().
 */
class ArchitectureSpec {
public:
    static ArchitectureSpec single_connected(int n);
    static ArchitectureSpec fully_connected(int n);
    static ArchitectureSpec tree_tridiagonal(int n);
    static ArchitectureSpec group_connected(int n, std::vector<int> cuts);
    static ArchitectureSpec uniform_groups(int n, int group_size);

    ArchitectureKind kind() const { return kind_; }
    int size() const { return n_; }

    /// Cut set I. {1..N-1} for single-connected, empty for fully-connected and
    /// tree-connected (where it carries no meaning).
    const std::vector<int>& cuts() const { return cuts_; }
    std::vector<IndexRange> partition() const { return partition_from_cuts(cuts_, n_); }

    /// True where the susceptance matrix may be nonzero (0-based indices).
    bool in_pattern(int i, int j) const;

    /// Canonical text form ("sc", "tc", "fc", "gc:4", "gc:I=2,5").
    const std::string& label() const { return label_; }

private:
    ArchitectureSpec(ArchitectureKind kind, int n, std::vector<int> cuts, std::string label);

    ArchitectureKind kind_;
    int n_;
    std::vector<int> cuts_;
    std::string label_;
};

/// Parsed architecture text, independent of N until resolved.
struct ArchitectureChoice {
    ArchitectureKind kind = ArchitectureKind::single_connected;
    std::optional<int> group_size;  // "gc:k"
    std::vector<int> explicit_cuts; // "gc:I=..."
    std::string text;

    /// Throws InputError if the choice is not valid for n elements.
    ArchitectureSpec resolve(int n) const;
};

/// Parses "sc", "tc", "fc", "gc:k" or "gc:I=2,5,9".
ArchitectureChoice parse_architecture(std::string_view text);

/// Comma-separated list; integers following a "gc:I=" entry extend its cut list,
/// so "sc,gc:I=2,5,tc" has three entries.
std::vector<ArchitectureChoice> parse_architecture_list(std::string_view text);

/// Real symmetric susceptance matrix (siemens) restricted to an architecture's pattern.
class SusceptanceMatrix {
public:
    explicit SusceptanceMatrix(ArchitectureSpec arch);

    /// Throws InputError if `values` is not exactly symmetric, not finite, has the
    /// wrong size or is nonzero off the pattern.
    SusceptanceMatrix(ArchitectureSpec arch, const RealMatrix& values);

    /// Sets B(i, j) and B(j, i). Throws InputError off the pattern.
    void set(int i, int j, double value);
    double operator()(int i, int j) const { return values_(i, j); }

    int size() const { return arch_.size(); }
    const ArchitectureSpec& architecture() const { return arch_; }
    const RealMatrix& values() const { return values_; }

private:
    ArchitectureSpec arch_;
    RealMatrix values_;
};

inline constexpr double kThetaSymmetryTol = 1e-10;
inline constexpr double kThetaUnitarityTol = 1e-9;

/// Lossless reciprocal scattering matrix; symmetric unitary to within
/// kThetaSymmetryTol / kThetaUnitarityTol, enforced at construction.
class ScatteringMatrix {
public:
    /// Throws NumericalError if the defects exceed the tolerances.
    explicit ScatteringMatrix(ComplexMat entries);

    int size() const { return static_cast<int>(entries_.rows()); }
    const ComplexMat& entries() const { return entries_; }

private:
    ComplexMat entries_;
};

/// Theta = (I + j z0 B)^{-1} (I - j z0 B), via a dense LU solve.
ScatteringMatrix theta_from_susceptance(const SusceptanceMatrix& b, double z0);

/// Same map for a plain matrix. Throws InputError if `b` is not symmetric.
ScatteringMatrix theta_from_susceptance(const RealMatrix& b, double z0);

/// |h_r^H Theta h_t|^2.
double received_power(const ChannelPair& pair, const ScatteringMatrix& theta);

/// ||h_r||^2 ||h_t||^2, the bound no lossless surface exceeds.
double upper_bound_full(const ChannelPair& pair);

/// (sum_g ||h_r[J_g]|| ||h_t[J_g]||)^2 over the groups induced by `cuts`.
double upper_bound_gc(const ChannelPair& pair, const std::vector<int>& cuts);

/// (sum_i |h_r,i| |h_t,i|)^2, the single-connected bound.
double upper_bound_sc(const ChannelPair& pair);

} // namespace bdris
