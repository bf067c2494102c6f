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

#include "sixdma/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sixdma {
namespace {

enum Stream : std::uint64_t { kInit = 3, kTraining = 1000 };

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct Realization {
  const PathTable* table;
  CMatrix H;
  CMatrix W;
  FpAux aux;
};

class AoState {
 public:
  AoState(const Scenario& scenario, const std::vector<PathTable>& tables, const Poses& poses, Polarization mode)
      : scenario_(scenario), weights_(scenario.config.weight_vector()), noise_(scenario.config.normalized_noise()) {
    for (const auto& t : tables) {
      Realization r{&t, assemble(poses, t, scenario.wavelength(), mode), {}, {}};
      r.W = mmse_combiner(r.H, noise_);
      r.aux = update_aux(r.H, r.W, weights_, noise_);
      states_.push_back(std::move(r));
    }
  }

  ApProblem problem(int m) const {
    ApProblem p;
    p.wavelength = scenario_.wavelength();
    const double w = 1.0 / static_cast<double>(states_.size());
    for (const auto& r : states_) {
      ApSample s;
      for (int k = 0; k < scenario_.num_uts(); ++k) s.links.push_back(&r.table->at(k, m));
      s.coeffs = coeffs_cv(m, scenario_.num_aps(), r.H, r.W, r.aux, weights_);
      s.weight = w;
      p.samples.push_back(std::move(s));
    }
    return p;
  }

  /// Rebuilds AP m's rows, refreshes the combiners and auxiliaries. Returns
  /// the worst relative SINR drop caused by the combiner refresh.
  double refresh(int m, const AntennaPose& pose) {
    double regression = 0.0;
    for (auto& r : states_) {
      update_ap_rows(r.H, m, pose, *r.table, scenario_.wavelength());
      const RVector before = sinr_all(r.H, r.W, noise_);
      r.W = mmse_combiner(r.H, noise_);
      const RVector after = sinr_all(r.H, r.W, noise_);
      for (Eigen::Index k = 0; k < before.size(); ++k)
        regression = std::max(regression, (before[k] - after[k]) / std::max(1.0, before[k]));
      r.aux = update_aux(r.H, r.W, weights_, noise_);
    }
    return regression;
  }

  double wsr(RVector* mean_rates = nullptr) const {
    double total = 0.0;
    RVector acc = RVector::Zero(scenario_.num_uts());
    for (const auto& r : states_) {
      const RVector rt = rates(r.H, r.W, noise_);
      acc += rt;
      total += weights_.dot(rt);
    }
    const auto n = static_cast<double>(states_.size());
    if (mean_rates) *mean_rates = acc / n;
    return total / n;
  }

  const FpAux& first_aux() const { return states_.front().aux; }

  std::vector<CMatrix> combiners() const {
    std::vector<CMatrix> out;
    for (const auto& r : states_) out.push_back(r.W);
    return out;
  }

 private:
  const Scenario& scenario_;
  RVector weights_;
  double noise_;
  std::vector<Realization> states_;
};

void check_monotone(double before, double after, double slack, const char* where) {
  if (after < before - slack) {
    std::ostringstream os;
    os.precision(17);
    os << "WSR decreased during " << where << ": " << before << " -> " << after;
    throw std::logic_error(os.str());
  }
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::sixdma: return "6dma";
    case Scheme::position_only: return "6dma-position";
    case Scheme::orientation_only: return "6dma-orientation";
    case Scheme::fa: return "fa";
    case Scheme::es: return "es";
    case Scheme::offline: return "offline-6dma";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : all_schemes())
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected 6dma|6dma-position|6dma-orientation|fa|es|offline-6dma)");
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> schemes{Scheme::sixdma, Scheme::position_only, Scheme::orientation_only,
                                           Scheme::fa,     Scheme::es,            Scheme::offline};
  return schemes;
}

void SolverConfig::validate() const {
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(eps3 > 0.0)) throw std::invalid_argument("thresholds must be positive");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  if (max_position_iters < 0 || max_orientation_iters < 0) throw std::invalid_argument("inner caps must be >= 0");
  if (offline_samples < 1) throw std::invalid_argument("offline_samples must be >= 1");
  if (es_position_points < 1 || es_orientation_points < 1) throw std::invalid_argument("ES grids need >= 1 point per axis");
  if (es_max_sweeps < 1) throw std::invalid_argument("es_max_sweeps must be >= 1");
  if (prv_error < 0.0) throw std::invalid_argument("prv_error must be >= 0");
}

Poses fixed_poses(const Scenario& scenario, Polarization mode) {
  Poses poses;
  for (const auto& region : scenario.regions) poses.push_back(AntennaPose{region.min, fixed_frame(mode)});
  return poses;
}

Poses initialize(const Scenario& scenario, const PathTable& table, Polarization mode, Rng& rng) {
  Poses poses;
  for (int m = 0; m < scenario.num_aps(); ++m) {
    const BoxRegion& region = scenario.regions[static_cast<std::size_t>(m)];
    AntennaPose pose;
    for (int a = 0; a < 3; ++a) pose.position[a] = rng.uniform(region.min[a], region.max[a]);
    for (int attempt = 0;; ++attempt) {
      const int k = static_cast<int>(rng.index(static_cast<std::size_t>(scenario.num_uts())));
      const PathSet& los = table.at(k, m);
      const Vec3 u = los.directions.col(0);
      const Vec3 e = los.fields.col(0);
      const Vec3 projected = e - u.dot(e) * u;
      if (projected.norm() < 1e-9) {
        if (attempt > 1000) throw std::runtime_error("initialize: every LoS field is parallel to its direction");
        continue;
      }
      const Vec3 v = projected.normalized();
      pose.orientation.resize(3, port_count(mode) + 1);
      pose.orientation.col(0) = u;
      pose.orientation.col(1) = v;
      if (mode == Polarization::dual) pose.orientation.col(2) = u.cross(v);
      break;
    }
    poses.push_back(pose);
  }
  return poses;
}

double evaluate_wsr(const Scenario& scenario, const Poses& poses, const PathTable& table, Polarization mode,
                    RVector* rate_out) {
  const double noise = scenario.config.normalized_noise();
  const CMatrix H = assemble(poses, table, scenario.wavelength(), mode);
  const CMatrix W = mmse_combiner(H, noise);
  const RVector r = rates(H, W, noise);
  if (rate_out) *rate_out = r;
  return scenario.config.weight_vector().dot(r);
}

SolveResult ao_solve(const Scenario& scenario, const std::vector<PathTable>& realizations, const Poses& start,
                     const SolverConfig& cfg, Blocks blocks) {
  cfg.validate();
  if (realizations.empty()) throw std::invalid_argument("ao_solve: no channel realizations");
  SolveResult result;
  result.poses = start;
  SolveTrace& trace = result.trace;

  auto t0 = Clock::now();
  AoState state(scenario, realizations, start, cfg.mode);
  trace.combiner_ms += elapsed_ms(t0);

  auto snapshot = [&]() {
    RVector r;
    trace.wsr.push_back(state.wsr(&r));
    trace.rates.push_back(r);
    trace.poses.push_back(result.poses);
    trace.aux.push_back(state.first_aux());
  };
  snapshot();
  for (const auto& p : start) trace.max_orthonormality_error = std::max(trace.max_orthonormality_error, orthonormality_error(p.orientation));

  const PositionSettings pos_settings{cfg.eps1, cfg.max_position_iters};
  OrientationSettings ori_settings;
  ori_settings.tolerance = cfg.eps2;
  ori_settings.max_iters = cfg.max_orientation_iters;

  double current = trace.wsr.back();
  auto step = [&](int m, const AntennaPose& pose, const char* where) {
    result.poses[static_cast<std::size_t>(m)] = pose;
    auto t = Clock::now();
    trace.max_combiner_regression = std::max(trace.max_combiner_regression, state.refresh(m, pose));
    trace.combiner_ms += elapsed_ms(t);
    const double value = state.wsr();
    check_monotone(current, value, cfg.monotone_slack, where);
    current = value;
  };

  for (int t = 0; t < cfg.max_outer; ++t) {
    const double previous = trace.wsr.back();
    if (blocks.positions) {
      for (int m = 0; m < scenario.num_aps(); ++m) {
        auto ts = Clock::now();
        const ApProblem problem = state.problem(m);
        AntennaPose pose = result.poses[static_cast<std::size_t>(m)];
        const PositionResult pr = optimize_position(pose, scenario.regions[static_cast<std::size_t>(m)], problem, pos_settings);
        trace.position_ms += elapsed_ms(ts);
        trace.position_traces.push_back(pr.objective_trace);
        trace.surrogate_gains.push_back(pr.surrogate_gain);
        pose.position = pr.position;
        step(m, pose, "position update");
      }
    }
    if (blocks.orientations) {
      for (int m = 0; m < scenario.num_aps(); ++m) {
        auto ts = Clock::now();
        const ApProblem problem = state.problem(m);
        AntennaPose pose = result.poses[static_cast<std::size_t>(m)];
        const OrientationResult orr = optimize_orientation(pose, problem, ori_settings);
        trace.orientation_ms += elapsed_ms(ts);
        trace.orientation_traces.push_back(orr.objective_trace);
        trace.max_orthonormality_error = std::max(trace.max_orthonormality_error, orr.max_orthonormality_error);
        pose.orientation = orr.orientation;
        step(m, pose, "orientation update");
      }
    }
    snapshot();
    trace.outer_iterations = t + 1;
    check_monotone(previous, trace.wsr.back(), cfg.monotone_slack, "outer iteration");
    if (trace.wsr.back() - previous < cfg.eps3) break;
  }
  result.combiners = state.combiners();
  return result;
}

SolveResult ao_solve(const Scenario& scenario, const PathTable& table, const Poses& start, const SolverConfig& cfg,
                     Blocks blocks) {
  return ao_solve(scenario, std::vector<PathTable>{table}, start, cfg, blocks);
}

std::vector<PathTable> training_realizations(const Scenario& scenario, int count) {
  std::vector<PathTable> tables;
  for (int i = 0; i < count; ++i) tables.push_back(sample_path_table(scenario, kTraining + static_cast<std::uint64_t>(i)));
  return tables;
}

SolveResult offline_solve(const Scenario& scenario, const SolverConfig& cfg) {
  cfg.validate();
  const std::vector<PathTable> tables = training_realizations(scenario, cfg.offline_samples);
  Rng rng(derive_seed(scenario.config.seed, kInit));
  const Poses start = initialize(scenario, tables.front(), cfg.mode, rng);
  return ao_solve(scenario, tables, start, cfg);
}

}  // namespace sixdma
