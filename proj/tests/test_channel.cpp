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
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace sixdma;
using namespace sixdma::testing;
constexpr double kPi = std::numbers::pi;

// h = sum_l conj(exp(j 2pi d.q / lambda)) * lambda/(4 pi d) * sqrt(max(d.u,0) |e.v|^2) * a_l
cdouble hand_channel(const Vec3& q, const Vec3& u, const Vec3& v, const PathSet& p, double lambda) {
  cdouble h = 0.0;
  for (int l = 0; l < p.size(); ++l) {
    const Vec3 d(std::cos(p.elevation[l]) * std::cos(p.azimuth[l]), std::cos(p.elevation[l]) * std::sin(p.azimuth[l]),
                 std::sin(p.elevation[l]));
    const double phase = 2 * kPi * d.dot(q) / lambda;
    const double ap = std::max(d.dot(u), 0.0);
    const double pol = std::pow(p.fields.col(l).dot(v), 2);
    const double g = lambda / (4 * kPi * p.distance) * std::sqrt(ap * pol);
    h += std::conj(std::exp(cdouble(0, phase))) * g * p.prv[l];
  }
  return h;
}

TEST(Scene, WaveVectorIsUnitAndMatchesAngles) {
  EXPECT_TRUE(wave_vector(0, 0).isApprox(Vec3(1, 0, 0)));
  EXPECT_TRUE(wave_vector(0, kPi / 2).isApprox(Vec3(0, 1, 0)));
  EXPECT_NEAR(wave_vector(kPi / 2, 1.0).z(), 1.0, 1e-15);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(wave_vector(rng.uniform(-2, 2), rng.uniform(-4, 4)).norm(), 1.0, 1e-15);
}

TEST(Scene, GeneratedScenarioSatisfiesInvariants) {
  ScenarioConfig cfg;
  cfg.seed = 9;
  const Scenario s = generate_scenario(cfg);
  ASSERT_EQ(s.num_aps(), 8);
  ASSERT_EQ(s.num_uts(), 6);
  for (const auto& r : s.regions) {
    const Vec3 side = r.max - r.min;
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(side[a], 2.0 * 0.125, 1e-15);
  }
  for (const auto& p : s.scatterers) {
    EXPECT_TRUE((p.array() >= cfg.scatterer_min.array()).all());
    EXPECT_TRUE((p.array() <= cfg.scatterer_max.array()).all());
  }
  const PathTable t = sample_path_table(s, 0);
  for (int m = 0; m < s.num_aps(); ++m)
    for (int k = 0; k < s.num_uts(); ++k) {
      const PathSet& p = t.at(k, m);
      ASSERT_EQ(p.size(), 5);
      for (int l = 0; l < p.size(); ++l) {
        EXPECT_NEAR(p.fields.col(l).norm(), 1.0, 1e-12);
        EXPECT_LT(std::abs(p.directions.col(l).dot(p.fields.col(l))), 1e-12);
      }
      const Vec3 to_ut = (s.ut_positions[k] - s.ap_positions[m]).normalized();
      EXPECT_NEAR(p.directions.col(0).dot(to_ut), 1.0, 1e-12);
      EXPECT_NEAR(p.distance, (s.ut_positions[k] - s.ap_positions[m]).norm(), 1e-12);
    }
}

TEST(Scene, SameSeedSameScenarioAndPaths) {
  ScenarioConfig cfg;
  cfg.seed = 42;
  const Scenario a = generate_scenario(cfg), b = generate_scenario(cfg);
  for (int k = 0; k < a.num_uts(); ++k) EXPECT_EQ(a.ut_positions[k], b.ut_positions[k]);
  const PathTable ta = sample_path_table(a, 3), tb = sample_path_table(b, 3);
  EXPECT_EQ(ta.at(2, 5).prv, tb.at(2, 5).prv);
  const PathTable tc = sample_path_table(a, 4);
  EXPECT_NE(ta.at(2, 5).prv, tc.at(2, 5).prv);
}

TEST(Scene, HotspotFractionOnePutsEveryUtInAHotspot) {
  ScenarioConfig cfg;
  cfg.num_uts = 30;
  cfg.hotspot_fraction = 1.0;
  const Scenario s = generate_scenario(cfg);
  for (const auto& u : s.ut_positions) EXPECT_TRUE(in_hotspot(cfg, u.x(), u.y()));
  cfg.hotspot_fraction = 0.0;
  for (const auto& u : generate_scenario(cfg).ut_positions) EXPECT_FALSE(in_hotspot(cfg, u.x(), u.y()));
}

TEST(Scene, ValidateRejectsBadConfigs) {
  ScenarioConfig cfg;
  cfg.num_aps = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.rician_factor = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.hotspots[1] = cfg.hotspots[0];
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.weights = {1, 1, 1, 1, 1, -1};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Scene, PrvPerturbationKeepsGeometry) {
  const Instance inst = make_instance(2, 2, 3, 5);
  Rng rng(1);
  const PathTable same = perturb_prv(inst.table, 0.0, rng);
  EXPECT_EQ(same.at(1, 1).prv, inst.table.at(1, 1).prv);
  const PathTable noisy = perturb_prv(inst.table, 0.1, rng);
  EXPECT_NE(noisy.at(1, 1).prv, inst.table.at(1, 1).prv);
  EXPECT_EQ(noisy.at(1, 1).directions, inst.table.at(1, 1).directions);
}

TEST(Channel, FrvEntriesHaveUnitModulusAndExpectedPhase) {
  Rng rng(2);
  const PathSet p = random_paths(4, rng);
  const Vec3 q(0.01, -0.02, 0.05);
  const CVector f = frv(q, p, 0.125);
  for (int l = 0; l < 4; ++l) {
    EXPECT_NEAR(std::abs(f[l]), 1.0, 1e-15);
    EXPECT_NEAR(std::arg(f[l] * std::exp(cdouble(0, -2 * kPi * p.directions.col(l).dot(q) / 0.125))), 0.0, 1e-12);
  }
  EXPECT_TRUE(frv(Vec3::Zero(), p, 0.125).isApprox(CVector::Ones(4)));
}

TEST(Channel, LossesClampAndSquare) {
  EXPECT_EQ(aperture_loss(Vec3(1, 0, 0), Vec3(-1, 0, 0)), 0.0);
  EXPECT_DOUBLE_EQ(aperture_loss(Vec3(1, 0, 0), Vec3(0.6, 0.8, 0)), 0.6);
  EXPECT_DOUBLE_EQ(polarization_loss(Vec3(0, 1, 0), Vec3(0, -0.5, std::sqrt(0.75))), 0.25);
}

TEST(Channel, CoefficientMatchesHandComputation) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const PathSet p = random_paths(5, rng, 17.0);
    AntennaPose pose{random_point(cube(0.25), rng), random_frame(3, rng)};
    for (int port = 0; port < 2; ++port) {
      const cdouble want = hand_channel(pose.position, pose.normal(), pose.polarization(port), p, 0.125);
      EXPECT_LT(std::abs(channel_coeff(pose, p, 0.125, port) - want), 1e-14 + 1e-12 * std::abs(want));
    }
  }
}

TEST(Channel, BackFacingPathsContributeNothing) {
  Rng rng(4);
  PathSet p = random_paths(1, rng);
  AntennaPose pose{Vec3::Zero(), Frame(3, 2)};
  Vec3 u = -p.directions.col(0);
  Vec3 v = p.fields.col(0);
  pose.orientation << u, v;
  EXPECT_EQ(channel_coeff(pose, p, 0.125), cdouble(0.0, 0.0));
}

TEST(Channel, BatchMatchesPointwise) {
  Rng rng(5);
  const PathSet p = random_paths(7, rng);
  const Frame a = random_frame(2, rng);
  std::vector<double> x, y, z;
  for (int n = 0; n < 33; ++n) {
    const Vec3 q = random_point(cube(0.25), rng);
    x.push_back(q.x());
    y.push_back(q.y());
    z.push_back(q.z());
  }
  std::vector<cdouble> out(33);
  channel_coeff_batch(a.col(0), a.col(1), p, 0.125, x, y, z, out);
  for (int n = 0; n < 33; ++n) {
    const AntennaPose pose{Vec3(x[n], y[n], z[n]), a};
    const cdouble want = channel_coeff(pose, p, 0.125);
    EXPECT_LT(std::abs(out[n] - want), 1e-12 * (1e-3 + std::abs(want)));
  }
}

TEST(Channel, AssembleLayoutAndRowUpdate) {
  const Instance inst = make_instance(3, 2, 4, 8);
  Rng rng(6);
  for (Polarization mode : {Polarization::uni, Polarization::dual}) {
    Poses poses;
    for (int m = 0; m < 3; ++m) poses.push_back({random_point(inst.scenario.regions[m], rng), random_frame(port_count(mode) + 1, rng)});
    CMatrix H = assemble(poses, inst.table, 0.125, mode);
    ASSERT_EQ(H.rows(), 3 * port_count(mode));
    ASSERT_EQ(H.cols(), 2);
    for (int p = 0; p < port_count(mode); ++p)
      for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 2; ++k) EXPECT_EQ(H(p * 3 + m, k), channel_coeff(poses[m], inst.table.at(k, m), 0.125, p));
    poses[1] = {random_point(inst.scenario.regions[1], rng), random_frame(port_count(mode) + 1, rng)};
    update_ap_rows(H, 1, poses[1], inst.table, 0.125);
    EXPECT_EQ(H, assemble(poses, inst.table, 0.125, mode));
  }
}

TEST(Channel, FixedFrameIsOrthonormal) {
  EXPECT_EQ(orthonormality_error(fixed_frame(Polarization::uni)), 0.0);
  EXPECT_EQ(orthonormality_error(fixed_frame(Polarization::dual)), 0.0);
  EXPECT_EQ(fixed_frame(Polarization::uni).cols(), 2);
}

}  // namespace
