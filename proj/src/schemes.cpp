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

#include <chrono>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "sixdma/solver.hpp"

namespace sixdma {
namespace {

enum Stream : std::uint64_t { kInit = 3, kPrvError = 4 };

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

std::vector<Frame> orientation_grid(int n, Polarization mode) {
  std::vector<Frame> frames;
  const int cols = port_count(mode) + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const Eigen::Matrix3d r = euler_zyz(2.0 * std::numbers::pi * i / n, std::numbers::pi * j / n,
                                            2.0 * std::numbers::pi * l / n);
        frames.emplace_back(r.leftCols(cols));
      }
  return frames;
}

// Selects the best candidate for AP m given its channel rows per candidate.
// rows(c) fills the AP's rows of H for candidate c. Returns the winning index
// or -1 when no candidate strictly beats `incumbent`.
template <typename Fill>
int select(CMatrix& H, int count, double incumbent, const RVector& weights, double noise, Fill rows, double& best) {
  int winner = -1;
  best = incumbent;
  for (int c = 0; c < count; ++c) {
    rows(H, c);
    const double value = wsr_mmse(H, weights, noise);
    if (value > best) {
      best = value;
      winner = c;
    }
  }
  return winner;
}

}  // namespace

Eigen::Matrix3d euler_zyz(double alpha, double beta, double gamma) {
  const Eigen::Matrix3d rz1 = Eigen::AngleAxisd(alpha, Vec3::UnitZ()).toRotationMatrix();
  const Eigen::Matrix3d ry = Eigen::AngleAxisd(beta, Vec3::UnitY()).toRotationMatrix();
  const Eigen::Matrix3d rz2 = Eigen::AngleAxisd(gamma, Vec3::UnitZ()).toRotationMatrix();
  return rz1 * ry * rz2;
}

EsResult es_baseline(const Scenario& scenario, const PathTable& table, const SolverConfig& cfg) {
  cfg.validate();
  const double lambda = scenario.wavelength();
  const double noise = scenario.config.normalized_noise();
  const RVector weights = scenario.config.weight_vector();
  const int num_aps = scenario.num_aps();
  const int num_uts = scenario.num_uts();
  const int ports = port_count(cfg.mode);

  EsResult result;
  result.poses = fixed_poses(scenario, cfg.mode);
  CMatrix H = assemble(result.poses, table, lambda, cfg.mode);
  double current = wsr_mmse(H, weights, noise);
  result.wsr.push_back(current);
  const std::vector<Frame> frames = orientation_grid(cfg.es_orientation_points, cfg.mode);

  for (int sweep = 0; sweep < cfg.es_max_sweeps; ++sweep) {
    bool changed = false;
    for (int m = 0; m < num_aps; ++m) {
      AntennaPose& pose = result.poses[static_cast<std::size_t>(m)];
      const BoxRegion& region = scenario.regions[static_cast<std::size_t>(m)];

      // Position grid, channel rows via the batched kernel.
      const int n = cfg.es_position_points;
      const auto gx = linspace(region.min.x(), region.max.x(), n);
      const auto gy = linspace(region.min.y(), region.max.y(), n);
      const auto gz = linspace(region.min.z(), region.max.z(), n);
      const std::size_t count = gx.size() * gy.size() * gz.size();
      std::vector<double> xs, ys, zs;
      xs.reserve(count);
      ys.reserve(count);
      zs.reserve(count);
      for (double x : gx)
        for (double y : gy)
          for (double z : gz) {
            xs.push_back(x);
            ys.push_back(y);
            zs.push_back(z);
          }
      std::vector<std::vector<cdouble>> rows(static_cast<std::size_t>(ports * num_uts), std::vector<cdouble>(count));
      for (int p = 0; p < ports; ++p)
        for (int k = 0; k < num_uts; ++k)
          channel_coeff_batch(pose.normal(), pose.polarization(p), table.at(k, m), lambda, xs, ys, zs,
                              rows[static_cast<std::size_t>(p * num_uts + k)]);
      double best = current;
      const int pick = select(
          H, static_cast<int>(count), current, weights, noise,
          [&](CMatrix& h, int c) {
            for (int p = 0; p < ports; ++p)
              for (int k = 0; k < num_uts; ++k)
                h(p * num_aps + m, k) = rows[static_cast<std::size_t>(p * num_uts + k)][static_cast<std::size_t>(c)];
          },
          best);
      if (pick >= 0) {
        const auto c = static_cast<std::size_t>(pick);
        pose.position = Vec3(xs[c], ys[c], zs[c]);
        current = best;
        changed = true;
      }
      update_ap_rows(H, m, pose, table, lambda);

      // Orientation grid at the selected position.
      const int pick_o = select(
          H, static_cast<int>(frames.size()), current, weights, noise,
          [&](CMatrix& h, int c) {
            const AntennaPose trial{pose.position, frames[static_cast<std::size_t>(c)]};
            for (int p = 0; p < ports; ++p)
              for (int k = 0; k < num_uts; ++k) h(p * num_aps + m, k) = channel_coeff(trial, table.at(k, m), lambda, p);
          },
          best);
      if (pick_o >= 0) {
        pose.orientation = frames[static_cast<std::size_t>(pick_o)];
        current = best;
        changed = true;
      }
      update_ap_rows(H, m, pose, table, lambda);
    }
    result.sweeps = sweep + 1;
    result.wsr.push_back(current);
    if (!changed) break;
  }
  return result;
}

SchemeRun run_scheme(Scheme scheme, const Scenario& scenario, const PathTable& table, const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = scenario.config.seed;
  PathTable design = table;
  if (cfg.prv_error > 0.0) {
    Rng noise_rng(derive_seed(seed, kPrvError));
    design = perturb_prv(table, cfg.prv_error, noise_rng);
  }
  Rng init_rng(derive_seed(seed, kInit));

  SchemeRun run;
  Poses start;
  switch (scheme) {
    case Scheme::fa:
      start = fixed_poses(scenario, cfg.mode);
      run.metrics.poses = start;
      break;
    case Scheme::sixdma: {
      start = initialize(scenario, design, cfg.mode, init_rng);
      SolveResult r = ao_solve(scenario, design, start, cfg);
      run.metrics.poses = std::move(r.poses);
      run.trace = std::move(r.trace);
      break;
    }
    case Scheme::position_only: {
      start = fixed_poses(scenario, cfg.mode);
      SolveResult r = ao_solve(scenario, design, start, cfg, Blocks{true, false});
      run.metrics.poses = std::move(r.poses);
      run.trace = std::move(r.trace);
      break;
    }
    case Scheme::orientation_only: {
      start = initialize(scenario, design, cfg.mode, init_rng);
      for (std::size_t m = 0; m < start.size(); ++m) start[m].position = scenario.regions[m].min;
      SolveResult r = ao_solve(scenario, design, start, cfg, Blocks{false, true});
      run.metrics.poses = std::move(r.poses);
      run.trace = std::move(r.trace);
      break;
    }
    case Scheme::es: {
      start = fixed_poses(scenario, cfg.mode);
      EsResult r = es_baseline(scenario, design, cfg);
      run.metrics.poses = std::move(r.poses);
      run.metrics.outer_iters = r.sweeps;
      break;
    }
    case Scheme::offline: {
      SolveResult r = offline_solve(scenario, cfg);
      start = r.trace.poses.front();
      run.metrics.poses = std::move(r.poses);
      run.trace = std::move(r.trace);
      break;
    }
  }
  if (!run.trace.wsr.empty()) run.metrics.outer_iters = run.trace.outer_iterations;
  run.metrics.initial_wsr = evaluate_wsr(scenario, start, table, cfg.mode);
  run.metrics.wsr = evaluate_wsr(scenario, run.metrics.poses, table, cfg.mode, &run.metrics.rates);
  run.metrics.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace sixdma
