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

#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "sixdma/serialize.hpp"
#include "sixdma/solver.hpp"

namespace sixdma {

/// A sweep: every (axis value, scheme, seed) triple is one independent run.
struct ExperimentPlan {
  ScenarioConfig scenario;
  SolverConfig solver;
  std::string axis = "num_uts";   // num_uts | num_aps | tx_power_dbm | prv_error_var | mode
  std::vector<std::string> values{"6"};
  std::vector<Scheme> schemes{Scheme::sixdma, Scheme::position_only, Scheme::orientation_only, Scheme::fa};
  std::vector<std::uint64_t> seeds;   // default 1..100
  std::string output = "results.csv";
  std::string format = "csv";         // csv | json
  int jobs = 1;

  ExperimentPlan();

  /// Throws std::invalid_argument on the first invalid field.
  void validate() const;
};

const std::vector<std::string>& sweep_axes();

/// Sets one plan key from its text value. Keys: m, k, l, fc_ghz,
/// region_side_lambda, rician_factor, noise_dbm, power_dbm, eps1, eps2, eps3,
/// max_outer, max_position_iters, max_orientation_iters, mode,
/// offline_samples, es_position_points, es_orientation_points, es_max_sweeps,
/// prv_error, num_scatterers, hotspot_fraction, axis, values, schemes, seeds,
/// output, format, jobs. Lists are comma or space separated; seeds also accept
/// inclusive ranges "a:b".
void apply_setting(ExperimentPlan& plan, const std::string& key, const std::string& value);

/// Reads `key = value` lines ('#' and ';' start comments) on top of the defaults.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan load_plan(const std::string& path);

/// Scenario and solver settings of one run.
void configure_run(const ExperimentPlan& plan, const std::string& axis_value, std::uint64_t seed,
                   ScenarioConfig& scenario, SolverConfig& solver);

struct ResultRow {
  std::string scheme;
  std::string axis_name;
  std::string axis_value;
  std::string seed;        // the seed, or "mean" / "stderr" for aggregate rows
  double wsr = 0.0;        // NaN for failed runs
  double outer_iters = 0.0;
  double wall_ms = 0.0;
  std::vector<double> rates;
  std::string error;       // empty on success

  bool aggregate() const { return seed == "mean" || seed == "stderr"; }
};

/// Runs every (axis value, scheme, seed) and appends mean and stderr rows per
/// (axis value, scheme). Row order is deterministic regardless of `jobs`.
/// Failed runs are kept with wsr = NaN and the failure reason.
std::vector<ResultRow> run_plan(const ExperimentPlan& plan,
                                const std::function<void(const ResultRow&)>& progress = {});

/// Mean and standard-error rows over the successful rows of one group.
std::pair<ResultRow, ResultRow> aggregate_rows(const std::vector<ResultRow>& rows);

std::string to_csv(const std::vector<ResultRow>& rows);
Json results_to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> results_from_json(const Json& j);

/// Destination path: `output`, moved under $SIXDMA_OUTPUT_DIR when that is set.
std::string resolve_output_path(const std::string& output);

/// Writes rows as CSV or JSON to `path`.
void emit(const std::vector<ResultRow>& rows, const std::string& format, const std::string& path);

}  // namespace sixdma
