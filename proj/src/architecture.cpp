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

#include "bdris/architecture.hpp"

#include "bdris/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace bdris {

std::string_view to_string(ArchitectureKind kind)
{
    switch (kind) {
    case ArchitectureKind::single_connected: return "single_connected";
    case ArchitectureKind::group_connected: return "group_connected";
    case ArchitectureKind::tree_tridiagonal: return "tree_tridiagonal";
    case ArchitectureKind::fully_connected: return "fully_connected";
    }
    return "unknown";
}

void validate_cuts(const std::vector<int>& cuts, int n)
{
    if (n < 1) {
        throw InputError("cut set: n must be >= 1");
    }
    int previous = 0;
    for (const int cut : cuts) {
        if (cut < 1 || cut > n - 1) {
            throw InputError("cut set: index " + std::to_string(cut) + " outside [1, "
                             + std::to_string(n - 1) + "]");
        }
        if (cut <= previous) {
            throw InputError("cut set: indices must be strictly increasing");
        }
        previous = cut;
    }
}

std::vector<IndexRange> partition_from_cuts(const std::vector<int>& cuts, int n)
{
    validate_cuts(cuts, n);
    std::vector<IndexRange> groups;
    groups.reserve(cuts.size() + 1);
    int begin = 0;
    for (const int cut : cuts) {
        groups.push_back({begin, cut});
        begin = cut;
    }
    groups.push_back({begin, n});
    return groups;
}

std::vector<int> uniform_cuts(int n, int group_size)
{
    if (n < 1 || group_size < 1 || n % group_size != 0) {
        throw InputError("uniform groups: group size " + std::to_string(group_size)
                         + " does not divide n = " + std::to_string(n));
    }
    std::vector<int> cuts;
    for (int cut = group_size; cut < n; cut += group_size) {
        cuts.push_back(cut);
    }
    return cuts;
}

std::vector<int> singleton_cuts(int n)
{
    std::vector<int> cuts;
    for (int cut = 1; cut < n; ++cut) {
        cuts.push_back(cut);
    }
    return cuts;
}

namespace {

std::string cuts_label(const std::vector<int>& cuts)
{
    std::string out = "gc:I=";
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += std::to_string(cuts[k]);
    }
    return out;
}

void require_n(int n)
{
    if (n < 1) {
        throw InputError("architecture: n must be >= 1 (got " + std::to_string(n) + ")");
    }
}

} // namespace

ArchitectureSpec::ArchitectureSpec(ArchitectureKind kind, int n, std::vector<int> cuts, std::string label)
    : kind_(kind), n_(n), cuts_(std::move(cuts)), label_(std::move(label))
{
}

ArchitectureSpec ArchitectureSpec::single_connected(int n)
{
    require_n(n);
    return ArchitectureSpec(ArchitectureKind::single_connected, n, singleton_cuts(n), "sc");
}

ArchitectureSpec ArchitectureSpec::fully_connected(int n)
{
    require_n(n);
    return ArchitectureSpec(ArchitectureKind::fully_connected, n, {}, "fc");
}

ArchitectureSpec ArchitectureSpec::tree_tridiagonal(int n)
{
    require_n(n);
    return ArchitectureSpec(ArchitectureKind::tree_tridiagonal, n, {}, "tc");
}

ArchitectureSpec ArchitectureSpec::group_connected(int n, std::vector<int> cuts)
{
    require_n(n);
    validate_cuts(cuts, n);
    std::string label = cuts_label(cuts);
    return ArchitectureSpec(ArchitectureKind::group_connected, n, std::move(cuts), std::move(label));
}

ArchitectureSpec ArchitectureSpec::uniform_groups(int n, int group_size)
{
    require_n(n);
    return ArchitectureSpec(ArchitectureKind::group_connected, n, uniform_cuts(n, group_size),
                            "gc:" + std::to_string(group_size));
}

bool ArchitectureSpec::in_pattern(int i, int j) const
{
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        return false;
    }
    if (kind_ == ArchitectureKind::tree_tridiagonal) {
        return std::abs(i - j) <= 1;
    }
    // Group index of element e is the number of cuts c with c <= e (0-based e).
    const auto group_of = [this](int e) { return std::upper_bound(cuts_.begin(), cuts_.end(), e) - cuts_.begin(); };
    return group_of(i) == group_of(j);
}

namespace {

int parse_int(std::string_view text, std::string_view context)
{
    int value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw InputError("architecture '" + std::string(context) + "': '" + std::string(text)
                         + "' is not an integer");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

bool is_integer(std::string_view text)
{
    return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace

ArchitectureChoice parse_architecture(std::string_view text)
{
    ArchitectureChoice choice;
    choice.text = std::string(text);
    if (text == "sc") {
        choice.kind = ArchitectureKind::single_connected;
    } else if (text == "tc") {
        choice.kind = ArchitectureKind::tree_tridiagonal;
    } else if (text == "fc") {
        choice.kind = ArchitectureKind::fully_connected;
    } else if (text.starts_with("gc:I=")) {
        choice.kind = ArchitectureKind::group_connected;
        const std::string_view body = text.substr(5);
        if (body.empty()) {
            throw InputError("architecture '" + choice.text + "': empty cut list");
        }
        for (const auto part : split(body, ',')) {
            choice.explicit_cuts.push_back(parse_int(part, text));
        }
        validate_cuts(choice.explicit_cuts, choice.explicit_cuts.back() + 1);
    } else if (text.starts_with("gc:")) {
        choice.kind = ArchitectureKind::group_connected;
        const int k = parse_int(text.substr(3), text);
        if (k < 1) {
            throw InputError("architecture '" + choice.text + "': group size must be >= 1");
        }
        choice.group_size = k;
    } else {
        throw InputError("unknown architecture '" + choice.text + "' (expected sc, tc, fc, gc:k or gc:I=i1,i2,...)");
    }
    return choice;
}

std::vector<ArchitectureChoice> parse_architecture_list(std::string_view text)
{
    std::vector<std::string> entries;
    for (const auto part : split(text, ',')) {
        if (is_integer(part) && !entries.empty() && entries.back().starts_with("gc:I=")) {
            entries.back() += ',';
            entries.back() += part;
        } else {
            entries.emplace_back(part);
        }
    }
    std::vector<ArchitectureChoice> out;
    out.reserve(entries.size());
    for (const auto& entry : entries) {
        out.push_back(parse_architecture(entry));
    }
    return out;
}

ArchitectureSpec ArchitectureChoice::resolve(int n) const
{
    switch (kind) {
    case ArchitectureKind::single_connected: return ArchitectureSpec::single_connected(n);
    case ArchitectureKind::tree_tridiagonal: return ArchitectureSpec::tree_tridiagonal(n);
    case ArchitectureKind::fully_connected: return ArchitectureSpec::fully_connected(n);
    case ArchitectureKind::group_connected:
        if (group_size) {
            return ArchitectureSpec::uniform_groups(n, *group_size);
        }
        return ArchitectureSpec::group_connected(n, explicit_cuts);
    }
    throw InputError("architecture: unknown kind");
}

SusceptanceMatrix::SusceptanceMatrix(ArchitectureSpec arch)
    : arch_(std::move(arch)), values_(RealMatrix::Zero(arch_.size(), arch_.size()))
{
}

SusceptanceMatrix::SusceptanceMatrix(ArchitectureSpec arch, const RealMatrix& values)
    : SusceptanceMatrix(std::move(arch))
{
    const int n = arch_.size();
    if (values.rows() != n || values.cols() != n) {
        throw InputError("susceptance: expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    if (!values.allFinite()) {
        throw InputError("susceptance: non-finite entries");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (values(i, j) != values(j, i)) {
                throw InputError("susceptance: matrix is not symmetric");
            }
            if (values(i, j) != 0.0 && !arch_.in_pattern(i, j)) {
                throw InputError("susceptance: nonzero entry outside the " + arch_.label() + " pattern");
            }
        }
    }
    values_ = values;
}

void SusceptanceMatrix::set(int i, int j, double value)
{
    if (!arch_.in_pattern(i, j)) {
        throw InputError("susceptance: (" + std::to_string(i) + ", " + std::to_string(j)
                         + ") is outside the " + arch_.label() + " pattern");
    }
    if (!std::isfinite(value)) {
        throw InputError("susceptance: non-finite value");
    }
    values_(i, j) = value;
    values_(j, i) = value;
}

ScatteringMatrix::ScatteringMatrix(ComplexMat entries) : entries_(std::move(entries))
{
    const auto check = check_symmetric_unitary(entries_, kThetaSymmetryTol, kThetaUnitarityTol);
    if (!check.passed) {
        throw NumericalError("scattering matrix is not symmetric unitary (symmetry defect "
                             + std::to_string(check.symmetry_defect) + ", unitarity defect "
                             + std::to_string(check.unitarity_defect) + ")");
    }
}

ScatteringMatrix theta_from_susceptance(const SusceptanceMatrix& b, double z0)
{
    return theta_from_susceptance(b.values(), z0);
}

ScatteringMatrix theta_from_susceptance(const RealMatrix& b, double z0)
{
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        throw InputError("theta_from_susceptance: z0 must be positive and finite");
    }
    if (b.rows() != b.cols() || b.rows() == 0) {
        throw InputError("theta_from_susceptance: B must be square and nonempty");
    }
    if (!b.allFinite()) {
        throw InputError("theta_from_susceptance: non-finite entries in B");
    }
    if (b != b.transpose()) {
        throw InputError("theta_from_susceptance: B is not symmetric");
    }
    const Eigen::Index n = b.rows();
    const ComplexMat jzb = Complex(0.0, z0) * b.cast<Complex>();
    const ComplexMat identity = ComplexMat::Identity(n, n);
    // I + j z0 B is invertible for real symmetric B (eigenvalues 1 + j z0 lambda).
    ComplexMat theta = (identity + jzb).partialPivLu().solve(identity - jzb);
    return ScatteringMatrix(std::move(theta));
}

double received_power(const ChannelPair& pair, const ScatteringMatrix& theta)
{
    if (theta.size() != pair.size()) {
        throw InputError("received_power: Theta is " + std::to_string(theta.size()) + "x"
                         + std::to_string(theta.size()) + " but the channels have "
                         + std::to_string(pair.size()) + " entries");
    }
    const Complex gain = pair.h_r().dot(theta.entries() * pair.h_t());
    return std::norm(gain);
}

double upper_bound_full(const ChannelPair& pair)
{
    return pair.h_r().squaredNorm() * pair.h_t().squaredNorm();
}

double upper_bound_gc(const ChannelPair& pair, const std::vector<int>& cuts)
{
    const int n = static_cast<int>(pair.size());
    double sum = 0.0;
    for (const auto& g : partition_from_cuts(cuts, n)) {
        sum += pair.h_r().segment(g.begin, g.size()).norm() * pair.h_t().segment(g.begin, g.size()).norm();
    }
    return sum * sum;
}

double upper_bound_sc(const ChannelPair& pair)
{
    const double sum = (pair.h_r().cwiseAbs().array() * pair.h_t().cwiseAbs().array()).sum();
    return sum * sum;
}

} // namespace bdris
