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
#include <string>
#include <vector>

#include "sixdma/channel.hpp"
#include "sixdma/orientation_opt.hpp"
#include "sixdma/position_opt.hpp"
#include "sixdma/receiver.hpp"
#include "sixdma/scene.hpp"

namespace sixdma {

enum class Scheme { sixdma, position_only, orientation_only, fa, es, offline };

std::string to_string(Scheme scheme);
/// Accepts 6dma, 6dma-position, 6dma-orientation, fa, es, offline-6dma.
Scheme scheme_from_string(const std::string& name);
const std::vector<Scheme>& all_schemes();

struct SolverConfig {
  double eps1 = 1e-3;
  double eps2 = 1e-3;
  double eps3 = 1e-2;
  int max_outer = 200;
  int max_position_iters = 200;
  int max_orientation_iters = 200;
  Polarization mode = Polarization::uni;
  int offline_samples = 20;
  int es_position_points = 13;      // per axis
  int es_orientation_points = 12;   // per Euler angle
  int es_max_sweeps = 50;
  double prv_error = 0.0;           // variance of the PRV estimation error
  double monotone_slack = 1e-9;

  /// Throws std::invalid_argument on the first invalid field.
  void validate() const;
};

/// Per-run convergence record. Index 0 of the per-iteration vectors is the
/// starting point; entry t is the state after outer iteration t.
struct SolveTrace {
  std::vector<double> wsr;                 // mean over realizations
  std::vector<RVector> rates;              // mean over realizations
  std::vector<Poses> poses;
  std::vector<FpAux> aux;                  // first realization
  std::vector<std::vector<double>> position_traces;      // F per SCA call
  std::vector<std::vector<double>> surrogate_gains;      // F-bar gain per SCA step
  std::vector<std::vector<double>> orientation_traces;   // Q per CG call
  double position_ms = 0.0;
  double orientation_ms = 0.0;
  double combiner_ms = 0.0;
  double max_orthonormality_error = 0.0;
  double max_combiner_regression = 0.0;    // worst relative SINR drop across combiner refreshes
  int outer_iterations = 0;
};

struct SolveResult {
  Poses poses;
  std::vector<CMatrix> combiners;   // one per realization
  SolveTrace trace;
};

/// Which pose blocks the AO driver updates.
struct Blocks {
  bool positions = true;
  bool orientations = true;
};

/// Fixed-antenna pose of every AP: q at the region vertex, u = e1, v = e2.
Poses fixed_poses(const Scenario& scenario, Polarization mode);

/// Random start: q uniform in each region, u pointing along the LoS direction
/// of a uniformly chosen UT, v its LoS field vector projected orthogonal to u
/// (v2 = u x v for dual polarization).
Poses initialize(const Scenario& scenario, const PathTable& table, Polarization mode, Rng& rng);

/// Mean WSR and per-UT rates of poses on one realization with MMSE combining.
double evaluate_wsr(const Scenario& scenario, const Poses& poses, const PathTable& table, Polarization mode,
                    RVector* rates = nullptr);

/// Alternating optimization over the realizations (equal weights): per outer
/// iteration, an SCA position sweep over the APs, then a manifold orientation
/// sweep, each AP step followed by an MMSE and FP auxiliary refresh. Stops
/// when the mean WSR gains less than eps3 or after max_outer iterations.
/// Throws std::logic_error if the mean WSR decreases beyond monotone_slack.
SolveResult ao_solve(const Scenario& scenario, const std::vector<PathTable>& realizations, const Poses& start,
                     const SolverConfig& cfg, Blocks blocks = {});

/// Single-realization convenience overload.
SolveResult ao_solve(const Scenario& scenario, const PathTable& table, const Poses& start, const SolverConfig& cfg,
                     Blocks blocks = {});

/// Offline design on cfg.offline_samples realizations drawn from the
/// scenario's channel distribution (streams 1000, 1001, ...).
SolveResult offline_solve(const Scenario& scenario, const SolverConfig& cfg);
std::vector<PathTable> training_realizations(const Scenario& scenario, int count);

/// Rotation matrix R_z(alpha) R_y(beta) R_z(gamma).
Eigen::Matrix3d euler_zyz(double alpha, double beta, double gamma);

struct EsResult {
  Poses poses;
  std::vector<double> wsr;   // after each sweep, index 0 = start
  int sweeps = 0;
};

/// Alternating per-AP selection over a position grid (points per axis) and a
/// Z-Y-Z Euler orientation grid, starting from the fixed-antenna pose. Only a
/// strict WSR improvement moves an AP.
EsResult es_baseline(const Scenario& scenario, const PathTable& table, const SolverConfig& cfg);

struct Metrics {
  double wsr = 0.0;
  RVector rates;
  double initial_wsr = 0.0;
  int outer_iters = 0;
  double wall_ms = 0.0;
  Poses poses;
};

struct SchemeRun {
  Metrics metrics;
  SolveTrace trace;   // empty for fa and es
};

/// Runs one scheme on a realization. Optimizing schemes design against PRVs
/// corrupted by CN(0, prv_error) noise and are scored on the true PRVs.
SchemeRun run_scheme(Scheme scheme, const Scenario& scenario, const PathTable& table, const SolverConfig& cfg);

}  // namespace sixdma
