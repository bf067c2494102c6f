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

#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace sixdma;
using namespace sixdma::testing;

SolverConfig small_config() {
  SolverConfig cfg;
  cfg.max_outer = 30;
  return cfg;
}

void expect_monotone(const SolveTrace& t) {
  for (std::size_t i = 1; i < t.wsr.size(); ++i) EXPECT_GE(t.wsr[i], t.wsr[i - 1] - 1e-9);
  for (const auto& tr : t.position_traces)
    for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GE(tr[i], tr[i - 1] - 1e-12);
  for (const auto& tr : t.orientation_traces)
    for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GE(tr[i], tr[i - 1] - 1e-12);
  for (const auto& g : t.surrogate_gains)
    for (double v : g) EXPECT_GE(v, -1e-12);
}

TEST(Solver, SchemeNamesRoundTrip) {
  for (Scheme s : all_schemes()) EXPECT_EQ(scheme_from_string(to_string(s)), s);
  EXPECT_THROW(scheme_from_string("bogus"), std::invalid_argument);
}

TEST(Solver, ConfigValidation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.eps3 = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_outer = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.offline_samples = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Solver, InitializationPointsAtAUtAndIsReproducible) {
  const Instance inst = make_instance(8, 6, 5, 3);
  for (Polarization mode : {Polarization::uni, Polarization::dual}) {
    Rng a(17), b(17);
    const Poses p = initialize(inst.scenario, inst.table, mode, a);
    const Poses q = initialize(inst.scenario, inst.table, mode, b);
    for (int m = 0; m < 8; ++m) {
      EXPECT_EQ(p[m].position, q[m].position);
      EXPECT_EQ(p[m].orientation, q[m].orientation);
      EXPECT_TRUE(inst.scenario.regions[m].contains(p[m].position));
      EXPECT_LT(orthonormality_error(p[m].orientation), 1e-12);
      double best = -1.0;
      for (int k = 0; k < 6; ++k) best = std::max(best, p[m].normal().dot(inst.table.at(k, m).directions.col(0)));
      EXPECT_NEAR(best, 1.0, 1e-12);
    }
  }
}

TEST(Solver, AoTracesAreMonotone) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Instance inst = make_instance(4, 3, 3, seed);
    Rng rng(derive_seed(seed, 3));
    const Poses start = initialize(inst.scenario, inst.table, Polarization::uni, rng);
    const SolveResult r = ao_solve(inst.scenario, inst.table, start, small_config());
    expect_monotone(r.trace);
    EXPECT_EQ(r.trace.wsr.size(), static_cast<std::size_t>(r.trace.outer_iterations + 1));
    EXPECT_LT(r.trace.max_orthonormality_error, 1e-10);
    EXPECT_LE(r.trace.max_combiner_regression, 1e-12);
    for (int m = 0; m < 4; ++m) EXPECT_TRUE(inst.scenario.regions[m].contains(r.poses[m].position));
    EXPECT_NEAR(evaluate_wsr(inst.scenario, r.poses, inst.table, Polarization::uni), r.trace.wsr.back(), 1e-9);
  }
}

TEST(Solver, SingleBlockSchemesFreezeTheOtherBlock) {
  const Instance inst = make_instance(4, 3, 3, 5);
  const SolverConfig cfg = small_config();
  const SchemeRun pos = run_scheme(Scheme::position_only, inst.scenario, inst.table, cfg);
  for (const auto& p : pos.metrics.poses) EXPECT_EQ(p.orientation, fixed_frame(Polarization::uni));
  const SchemeRun ori = run_scheme(Scheme::orientation_only, inst.scenario, inst.table, cfg);
  for (int m = 0; m < 4; ++m) EXPECT_EQ(ori.metrics.poses[m].position, inst.scenario.regions[m].min);
  EXPECT_GE(pos.metrics.wsr, pos.metrics.initial_wsr - 1e-9);
  EXPECT_GE(ori.metrics.wsr, ori.metrics.initial_wsr - 1e-9);
}

TEST(Solver, FixedAntennaSchemeIsDeterministic) {
  const Instance inst = make_instance(4, 3, 3, 6);
  const SchemeRun a = run_scheme(Scheme::fa, inst.scenario, inst.table, small_config());
  const SchemeRun b = run_scheme(Scheme::fa, inst.scenario, inst.table, small_config());
  EXPECT_EQ(a.metrics.wsr, b.metrics.wsr);
  EXPECT_EQ(a.metrics.wsr, evaluate_wsr(inst.scenario, fixed_poses(inst.scenario, Polarization::uni), inst.table,
                                        Polarization::uni));
  EXPECT_EQ(a.metrics.outer_iters, 0);
  EXPECT_TRUE(a.trace.wsr.empty());
}

TEST(Solver, OfflineWithOneSampleIsTheInstantaneousSolve) {
  const Instance inst = make_instance(3, 2, 3, 7);
  SolverConfig cfg = small_config();
  cfg.offline_samples = 1;
  const SolveResult off = offline_solve(inst.scenario, cfg);
  const std::vector<PathTable> tables = training_realizations(inst.scenario, 1);
  Rng rng(derive_seed(inst.scenario.config.seed, 3));
  const Poses start = initialize(inst.scenario, tables[0], cfg.mode, rng);
  const SolveResult on = ao_solve(inst.scenario, tables[0], start, cfg);
  ASSERT_EQ(off.poses.size(), on.poses.size());
  for (std::size_t m = 0; m < on.poses.size(); ++m) {
    EXPECT_EQ(off.poses[m].position, on.poses[m].position);
    EXPECT_EQ(off.poses[m].orientation, on.poses[m].orientation);
  }
  EXPECT_EQ(off.trace.wsr, on.trace.wsr);
}

TEST(Solver, OfflineAverageTraceIsMonotone) {
  const Instance inst = make_instance(3, 2, 3, 8);
  SolverConfig cfg = small_config();
  cfg.offline_samples = 4;
  const SolveResult r = offline_solve(inst.scenario, cfg);
  expect_monotone(r.trace);
  EXPECT_EQ(r.combiners.size(), 4u);
}

TEST(Solver, DualPolarizedSolveKeepsFramesOrthonormal) {
  const Instance inst = make_instance(3, 3, 3, 9);
  SolverConfig cfg = small_config();
  cfg.mode = Polarization::dual;
  const SchemeRun r = run_scheme(Scheme::sixdma, inst.scenario, inst.table, cfg);
  ASSERT_EQ(r.metrics.poses.size(), 3u);
  for (const auto& p : r.metrics.poses) {
    EXPECT_EQ(p.orientation.cols(), 3);
    EXPECT_LT(orthonormality_error(p.orientation), 1e-10);
  }
  EXPECT_EQ(assemble(r.metrics.poses, inst.table, inst.scenario.wavelength(), cfg.mode).rows(), 6);
  expect_monotone(r.trace);
}

TEST(Solver, EulerRotationIsProper) {
  EXPECT_TRUE(euler_zyz(0, 0, 0).isApprox(Eigen::Matrix3d::Identity()));
  const Eigen::Matrix3d r = euler_zyz(0.3, 1.1, -2.0);
  EXPECT_LT((r.transpose() * r - Eigen::Matrix3d::Identity()).norm(), 1e-14);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
}

TEST(Solver, SinglePointGridsReduceToFixedAntenna) {
  const Instance inst = make_instance(3, 2, 3, 10);
  SolverConfig cfg;
  cfg.es_position_points = 1;
  cfg.es_orientation_points = 1;
  const EsResult es = es_baseline(inst.scenario, inst.table, cfg);
  const double fa = evaluate_wsr(inst.scenario, fixed_poses(inst.scenario, cfg.mode), inst.table, cfg.mode);
  EXPECT_EQ(es.wsr.back(), fa);
  EXPECT_EQ(es.sweeps, 1);
}

TEST(Solver, GridSelectionIsMonotoneAndCapped) {
  const Instance inst = make_instance(3, 2, 3, 11);
  SolverConfig cfg;
  cfg.es_position_points = 3;
  cfg.es_orientation_points = 4;
  cfg.es_max_sweeps = 2;
  const EsResult es = es_baseline(inst.scenario, inst.table, cfg);
  EXPECT_LE(es.sweeps, 2);
  for (std::size_t i = 1; i < es.wsr.size(); ++i) EXPECT_GE(es.wsr[i], es.wsr[i - 1]);
  EXPECT_NEAR(evaluate_wsr(inst.scenario, es.poses, inst.table, cfg.mode), es.wsr.back(), 1e-9);
}

TEST(Solver, PrvErrorLeavesFixedAntennaUntouched) {
  const Instance inst = make_instance(3, 2, 3, 12);
  SolverConfig cfg = small_config();
  const double clean = run_scheme(Scheme::fa, inst.scenario, inst.table, cfg).metrics.wsr;
  cfg.prv_error = 0.5;
  EXPECT_EQ(run_scheme(Scheme::fa, inst.scenario, inst.table, cfg).metrics.wsr, clean);
  // Designed on corrupted PRVs, scored on the true ones: still a valid WSR.
  const SchemeRun r = run_scheme(Scheme::sixdma, inst.scenario, inst.table, cfg);
  EXPECT_NEAR(r.metrics.wsr, evaluate_wsr(inst.scenario, r.metrics.poses, inst.table, cfg.mode), 1e-12);
}

}  // namespace
