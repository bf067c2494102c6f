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
#include <cstring>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "sixdma/orientation_opt.hpp"
#include "sixdma/stiefel.hpp"
#include "support.hpp"

namespace {

using namespace sixdma;
using namespace sixdma::testing;

Frame random_matrix_real(int cols, Rng& rng) {
  Frame m(3, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = rng.normal();
  return m;
}

// Maximum of tr(M^T A) over orthonormal A is the nuclear norm of M. Square
// frames keep their determinant along the path, so within the component of
// `start` the smallest singular value enters with sign det(M) det(start).
double linear_maximum(const Frame& m, const Frame& start) {
  const RVector s = Eigen::JacobiSVD<Eigen::MatrixXd>(Eigen::MatrixXd(m)).singularValues();
  if (m.cols() < 3) return s.sum();
  const double sign = Eigen::Matrix3d(m).determinant() * Eigen::Matrix3d(start).determinant() > 0 ? 1.0 : -1.0;
  return s[0] + s[1] + sign * s[2];
}

TEST(Stiefel, RetractionOfZeroStepIsBitExact) {
  Rng rng(1);
  for (int cols : {2, 3}) {
    for (int i = 0; i < 20; ++i) {
      const Frame a = random_frame(cols, rng);
      const auto r = stiefel::retract(a, Frame::Zero(3, cols));
      ASSERT_TRUE(r.has_value());
      EXPECT_EQ(std::memcmp(r->data(), a.data(), sizeof(double) * a.size()), 0);
    }
  }
}

TEST(Stiefel, RetractionIsOrthonormalWithPositiveDiagonal) {
  Rng rng(2);
  for (int cols : {2, 3}) {
    for (int i = 0; i < 50; ++i) {
      const Frame a = random_frame(cols, rng);
      const Frame step = stiefel::riemannian_grad(a, random_matrix_real(cols, rng));
      const auto r = stiefel::retract(a, step);
      ASSERT_TRUE(r.has_value());
      EXPECT_LT(orthonormality_error(*r), 1e-12);
      // R = Q^T (A + step) is upper triangular with a positive diagonal.
      const Eigen::MatrixXd R = r->transpose() * (a + step);
      for (int j = 0; j < cols; ++j) EXPECT_GT(R(j, j), 0.0);
      for (int j = 0; j < cols; ++j)
        for (int k = j + 1; k < cols; ++k) EXPECT_NEAR(R(k, j), 0.0, 1e-12);
    }
  }
}

TEST(Stiefel, RankDeficientTargetIsRejected) {
  Frame a = fixed_frame(Polarization::uni);
  Frame step = Frame::Zero(3, 2);
  step.col(1) = a.col(0) - a.col(1);   // both columns become e1
  EXPECT_FALSE(stiefel::retract(a, step).has_value());
}

TEST(Stiefel, ProjectionIsTangentAndIdempotent) {
  Rng rng(3);
  for (int cols : {2, 3}) {
    for (int i = 0; i < 50; ++i) {
      const Frame a = random_frame(cols, rng);
      const Frame g = random_matrix_real(cols, rng);
      const Frame p = stiefel::riemannian_grad(a, g);
      EXPECT_LT(stiefel::tangent_error(a, p), 1e-12);
      EXPECT_LT((stiefel::riemannian_grad(a, p) - p).norm(), 1e-12);
      // The projection is orthogonal: <g - p, p> = 0.
      EXPECT_NEAR(stiefel::inner(g - p, p), 0.0, 1e-12);
      const Frame b = random_frame(cols, rng);
      EXPECT_LT(stiefel::tangent_error(b, stiefel::transport(p, b)), 1e-12);
    }
  }
}

TEST(Stiefel, ManifoldDimension) {
  EXPECT_EQ(stiefel::manifold_dimension(Frame::Zero(3, 2)), 3);
  EXPECT_EQ(stiefel::manifold_dimension(Frame::Zero(3, 3)), 3);
}

TEST(Orientation, NumericGradientOfLinearObjective) {
  Rng rng(4);
  for (int cols : {2, 3}) {
    const Frame m = random_matrix_real(cols, rng);
    const FrameObjective q = [&](const Frame& a) { return (m.transpose() * a).trace(); };
    const Frame a = random_frame(cols, rng);
    const Frame g = euclidean_grad(q, a, 1e-6);
    EXPECT_LT((g - m).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LT((euclidean_grad(q, a, 1e-6, true) - m).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(Orientation, LinearObjectiveReachesNuclearNorm) {
  Rng rng(5);
  for (int cols : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      const Frame m = random_matrix_real(cols, rng);
      const FrameObjective q = [&](const Frame& a) { return (m.transpose() * a).trace(); };
      OrientationSettings s;
      s.tolerance = 1e-12;
      s.max_iters = 500;
      const Frame start = random_frame(cols, rng);
      const OrientationResult r = optimize_orientation(q, start, s);
      const double best = linear_maximum(m, start);
      EXPECT_NEAR(q(r.orientation), best, 1e-6 * std::abs(best));
      EXPECT_LT(r.max_orthonormality_error, 1e-10);
      EXPECT_LT(r.max_tangent_error, 1e-9);
      for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
        EXPECT_GE(r.objective_trace[k], r.objective_trace[k - 1] - 1e-12);
    }
  }
}

TEST(Orientation, CachedObjectiveMatchesSubproblemObjective) {
  Rng rng(6);
  for (Polarization mode : {Polarization::uni, Polarization::dual}) {
    RandomAp ap = random_ap(3, 5, mode, rng);
    const OrientationObjective q(ap.pose.position, ap.problem);
    for (int i = 0; i < 20; ++i) {
      AntennaPose probe = ap.pose;
      probe.orientation = random_frame(port_count(mode) + 1, rng);
      const double want = subproblem_objective(probe, ap.problem);
      EXPECT_NEAR(q(probe.orientation), want, 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Orientation, SubproblemRunsAscendOnTheManifold) {
  Rng rng(7);
  int iterations = 0;
  for (Polarization mode : {Polarization::uni, Polarization::dual}) {
    for (int i = 0; i < 10; ++i) {
      RandomAp ap = random_ap(3, 5, mode, rng);
      OrientationSettings s;
      s.tolerance = 1e-9;
      const OrientationResult r = optimize_orientation(ap.pose, ap.problem, s);
      iterations += r.iterations;
      EXPECT_LT(orthonormality_error(r.orientation), 1e-10);
      EXPECT_LT(r.max_orthonormality_error, 1e-10);
      EXPECT_LT(r.max_tangent_error, 1e-9);
      for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
        EXPECT_GE(r.objective_trace[k], r.objective_trace[k - 1]);
      AntennaPose end = ap.pose;
      end.orientation = r.orientation;
      EXPECT_NEAR(subproblem_objective(end, ap.problem), r.objective_trace.back(),
                  1e-10 * std::max(1.0, std::abs(r.objective_trace.back())));
    }
  }
  EXPECT_GT(iterations, 20);
}

TEST(Orientation, ConstantObjectiveStopsImmediately) {
  const FrameObjective q = [](const Frame&) { return 1.0; };
  const Frame a = fixed_frame(Polarization::uni);
  const OrientationResult r = optimize_orientation(q, a);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.orientation, a);
}

}  // namespace
