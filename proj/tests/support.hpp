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

// Random instance builders shared by the unit tests and the acceptance runner.

#include <cmath>
#include <numbers>
#include <vector>

#include "sixdma/channel.hpp"
#include "sixdma/receiver.hpp"
#include "sixdma/rng.hpp"
#include "sixdma/scene.hpp"
#include "sixdma/solver.hpp"
#include "sixdma/subproblem.hpp"

namespace sixdma::testing {

inline CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = rng.complex_normal(1.0);
  return a;
}

inline Vec3 random_unit(Rng& rng) {
  Vec3 v(rng.normal(), rng.normal(), rng.normal());
  return v.normalized();
}

/// Random orthonormal frame with `cols` columns (Q factor of a Gaussian matrix).
inline Frame random_frame(int cols, Rng& rng) {
  Eigen::Matrix3d g;
  for (int i = 0; i < 9; ++i) g(i) = rng.normal();
  const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(g).householderQ();
  return q.leftCols(cols);
}

/// Link with `paths` random arrival directions, transverse unit fields and
/// CN(0, 1) path responses.
inline PathSet random_paths(int paths, Rng& rng, double distance = 30.0) {
  std::vector<double> el, az;
  CVector prv(paths);
  Eigen::Matrix3Xd fields(3, paths);
  for (int l = 0; l < paths; ++l) {
    el.push_back(rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2));
    az.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
    prv[l] = rng.complex_normal(1.0);
    const Vec3 d = wave_vector(el.back(), az.back());
    const Vec3 r = random_unit(rng);
    fields.col(l) = (r - r.dot(d) * d).normalized();
  }
  return PathSet::from_angles(el, az, prv, fields, distance);
}

inline Vec3 random_point(const BoxRegion& box, Rng& rng) {
  Vec3 q;
  for (int a = 0; a < 3; ++a) q[a] = rng.uniform(box.min[a], box.max[a]);
  return q;
}

inline BoxRegion cube(double side) { return BoxRegion{Vec3::Zero(), Vec3::Constant(side)}; }

/// Single-AP subproblem with random FP coefficients (c ~ CN, coupling = y y^H).
struct RandomAp {
  std::vector<PathSet> links;
  ApProblem problem;
  AntennaPose pose;
};

inline RandomAp random_ap(int uts, int paths, Polarization mode, Rng& rng, double coupling_scale = 1.0) {
  RandomAp r;
  const int ports = port_count(mode);
  for (int k = 0; k < uts; ++k) r.links.push_back(random_paths(paths, rng, rng.uniform(5.0, 50.0)));
  ApSample s;
  for (const auto& l : r.links) s.links.push_back(&l);
  // Typical path gains are ~ lambda / (4 pi d), so scale c and the coupling to
  // keep both objective terms of comparable size.
  const double g = 0.125 / (4.0 * std::numbers::pi * 20.0);
  s.coeffs.c = random_matrix(uts, ports, rng) * (1.0 / g);
  const CMatrix y = random_matrix(ports, ports, rng);
  s.coeffs.coupling = coupling_scale * (y * y.adjoint()) / (g * g);
  r.problem.wavelength = 0.125;
  r.problem.samples.push_back(std::move(s));
  r.pose.position = random_point(cube(0.25), rng);
  r.pose.orientation = random_frame(ports + 1, rng);
  return r;
}

/// Scenario and one realization at the given size (defaults otherwise).
struct Instance {
  Scenario scenario;
  PathTable table;
};

inline Instance make_instance(int aps, int uts, int paths, std::uint64_t seed, std::uint64_t stream = 0) {
  ScenarioConfig cfg;
  cfg.num_aps = aps;
  cfg.num_uts = uts;
  cfg.paths_per_link = paths;
  cfg.seed = seed;
  Instance inst{generate_scenario(cfg), {}};
  inst.table = sample_path_table(inst.scenario, stream);
  return inst;
}

}  // namespace sixdma::testing
