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

#include "bdris/json_io.hpp"

#include "bdris/errors.hpp"

#include <cmath>
#include <fstream>

namespace bdris {

namespace {

Json complex_vec_to_json(const ComplexVec& v)
{
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(Json::array({v[i].real(), v[i].imag()}));
    }
    return arr;
}

ComplexVec complex_vec_from_json(const Json& arr, const char* key)
{
    if (!arr.is_array()) {
        throw InputError(std::string("channel file: '") + key + "' must be an array of [re, im] pairs");
    }
    ComplexVec v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Json& entry = arr[i];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
            throw InputError(std::string("channel file: entry ") + std::to_string(i) + " of '" + key
                             + "' is not a [re, im] pair of numbers");
        }
        v[static_cast<Eigen::Index>(i)] = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    return v;
}

Json finite_or_null(double value)
{
    return std::isfinite(value) ? Json(value) : Json(nullptr);
}

Json complex_mat_to_json(const ComplexMat& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json real_mat_to_json(const RealMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Json channel_to_json(const ChannelPair& pair)
{
    Json doc;
    doc["n"] = pair.size();
    doc["h_r"] = complex_vec_to_json(pair.h_r());
    doc["h_t"] = complex_vec_to_json(pair.h_t());
    return doc;
}

ChannelPair channel_from_json(const Json& doc)
{
    if (!doc.is_object()) {
        throw InputError("channel file: top level must be an object");
    }
    for (const char* key : {"n", "h_r", "h_t"}) {
        if (!doc.contains(key)) {
            throw InputError(std::string("channel file: missing '") + key + "'");
        }
    }
    if (!doc["n"].is_number_integer()) {
        throw InputError("channel file: 'n' must be an integer");
    }
    const auto n = doc["n"].get<long long>();
    ComplexVec h_r = complex_vec_from_json(doc["h_r"], "h_r");
    ComplexVec h_t = complex_vec_from_json(doc["h_t"], "h_t");
    if (h_r.size() != n || h_t.size() != n) {
        throw InputError("channel file: 'n' = " + std::to_string(n) + " but h_r has " + std::to_string(h_r.size())
                         + " and h_t has " + std::to_string(h_t.size()) + " entries");
    }
    return ChannelPair(std::move(h_r), std::move(h_t));
}

ChannelPair read_channel_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open channel file '" + path.string() + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("channel file '" + path.string() + "': " + e.what());
    }
    return channel_from_json(doc);
}

void write_channel_file(const std::filesystem::path& path, const ChannelPair& pair)
{
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write channel file '" + path.string() + "'");
    }
    out << channel_to_json(pair).dump(2) << '\n';
}

Json membership_to_json(const MembershipReport& report)
{
    Json doc;
    doc["in_a"] = report.in_a;
    doc["cut_set"] = report.cut_set;
    doc["gammas"] = report.gammas;
    Json ratios = Json::array();
    for (const double r : report.group_ratios) {
        ratios.push_back(finite_or_null(r));
    }
    doc["group_ratios"] = std::move(ratios);
    doc["c1_holds"] = report.c1_holds;
    return doc;
}

Json optimize_result_to_json(const OptimizeResult& result, bool with_matrices)
{
    Json doc;
    doc["arch"] = result.b_matrix.architecture().label();
    doc["n"] = result.b_matrix.size();
    doc["p_r"] = result.p_r;
    doc["p_bar_full"] = result.p_bar_full;
    doc["p_bar_arch"] = result.p_bar_arch;
    doc["ratio_full"] = result.ratio_full;
    doc["residual_norm"] = result.residual_norm;
    doc["consistent"] = result.consistent;
    if (with_matrices) {
        doc["b_matrix"] = real_mat_to_json(result.b_matrix.values());
        doc["theta"] = complex_mat_to_json(result.theta.entries());
    }
    return doc;
}

} // namespace bdris
