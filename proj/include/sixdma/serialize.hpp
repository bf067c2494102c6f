// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The sixdma Authors
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

#pragma once

#include <string>

#include <json.hpp>

#include "sixdma/solver.hpp"

namespace sixdma {

using Json = nlohmann::ordered_json;

// JSON layouts. Doubles are written in shortest round-trip form, so parsing a
// dump and dumping again reproduces the same bytes and the same values.
//
// Scenario:  {"config": {...}, "ap_positions": [[x,y,z],...], "ut_positions": [...],
//             "scatterers": [...], "regions": [{"min": [..], "max": [..]}, ...]}
// PathTable: {"num_aps": M, "num_uts": K, "links": [[PathSet for k = 0..K-1] for m = 0..M-1]}
// PathSet:   {"elevation": [...], "azimuth": [...], "prv": [[re, im], ...],
//             "fields": [[x,y,z], ...], "distance": d}

Json to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const Json& j);

Json to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

Json to_json(const PathSet& paths);
PathSet path_set_from_json(const Json& j);

Json to_json(const PathTable& table);
PathTable path_table_from_json(const Json& j);

Json to_json(const AntennaPose& pose);
AntennaPose pose_from_json(const Json& j);
Json to_json(const Poses& poses);
Poses poses_from_json(const Json& j);

Json to_json(const SolveTrace& trace);
Json to_json(const Metrics& metrics);

/// Scenario together with one channel realization: {"scenario": ..., "paths": ...}.
Json replay_to_json(const Scenario& scenario, const PathTable& table);
std::pair<Scenario, PathTable> replay_from_json(const Json& j);

std::string read_file(const std::string& path);
/// Writes `text` to `path`; throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace sixdma
