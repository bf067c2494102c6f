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

#include <functional>
#include <vector>

#include "sixdma/subproblem.hpp"

namespace sixdma {

using FrameObjective = std::function<double(const Frame&)>;

/// Entrywise finite-difference gradient of q at A. Forward differences
/// (q(A + h E_ij) - q(A)) / h by default; central differences when `central`.
Frame euclidean_grad(const FrameObjective& q, const Frame& a, double step = 1e-6, bool central = false);

/// Q(A) of one AP at a fixed position, with the position-dependent factors
/// conj(f_l) a_l lambda / (4 pi d) precomputed per path. Agrees with
/// subproblem_objective for a pose at that position.
class OrientationObjective {
 public:
  OrientationObjective(const Vec3& position, const ApProblem& problem);

  double operator()(const Frame& a) const;

 private:
  struct Link {
    Eigen::Matrix3Xd directions;
    Eigen::Matrix3Xd fields;
    CVector z;
  };
  struct Sample {
    std::vector<Link> links;
    const ApCoefficients* coeffs;
    double weight;
  };
  std::vector<Sample> samples_;
};

struct OrientationSettings {
  double tolerance = 1e-3;
  int max_iters = 200;
  double fd_step = 1e-6;
  double initial_step = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;
  double min_step = 1e-10;
};

struct OrientationResult {
  Frame orientation;
  std::vector<double> objective_trace;   // Q at the start and after every accepted step
  int iterations = 0;
  int restarts = 0;
  double max_orthonormality_error = 0.0;
  double max_tangent_error = 0.0;        // over transported directions
};

/// Polak-Ribiere (PR+) conjugate-gradient ascent on the Stiefel manifold with
/// QR retraction and Armijo backtracking. Restarts with the gradient every
/// 3 * dim iterations and whenever the direction is not an ascent direction.
OrientationResult optimize_orientation(const FrameObjective& q, const Frame& start,
                                       const OrientationSettings& settings = {});

/// Orientation subproblem of one AP with its position held fixed.
OrientationResult optimize_orientation(const AntennaPose& start, const ApProblem& problem,
                                       const OrientationSettings& settings = {});

}  // namespace sixdma
