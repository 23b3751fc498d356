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

#include "bdris/adversarial.hpp"
#include "bdris/channel.hpp"
#include "bdris/optimize.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace bdris {

using Json = nlohmann::ordered_json;

/// {"n": N, "h_r": [[re, im], ...], "h_t": [[re, im], ...]}
Json channel_to_json(const ChannelPair& pair);

/// Throws InputError on schema violations or an invalid pair.
ChannelPair channel_from_json(const Json& doc);

ChannelPair read_channel_file(const std::filesystem::path& path);
void write_channel_file(const std::filesystem::path& path, const ChannelPair& pair);

/// {in_a, cut_set, gammas, group_ratios, c1_holds}; non-finite ratios become null.
Json membership_to_json(const MembershipReport& report);

/// Scalar fields always; B and Theta (as [re, im] pairs) when `with_matrices`.
Json optimize_result_to_json(const OptimizeResult& result, bool with_matrices);

} // namespace bdris
