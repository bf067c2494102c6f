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

#include <vector>

#include "sixdma/subproblem.hpp"

namespace sixdma {

/// Majorization of the interference term of one link around an anchor:
/// v|h(q)|^2 = f(q)^H C f(q) with C = B V^T B^H (B = per-port G a columns),
/// bounded by varpi I with varpi the largest eigenvalue of C.
struct LinkSurrogate {
  Eigen::MatrixXcd gains;   // L x ports, column p = G_p a
  CMatrix coupling;         // ports x ports
  double varpi = 0.0;
  CVector b;                // (varpi I - C) f(anchor) + sum_p c_p G_p a
};

LinkSurrogate build_link_surrogate(const Vec3& anchor, const PathSet& paths, const Frame& orientation,
                                   const CVector& c_row, const CMatrix& coupling, double wavelength);

/// f(q)^H C f(q), the exact interference term of the link.
double link_quadratic(const Vec3& q, const PathSet& paths, const LinkSurrogate& link, double wavelength);

/// Right-hand side of the majorization: f^H Lambda f - 2 Re{f^H (Lambda - C) f_i} + f_i^H (Lambda - C) f_i.
double link_quadratic_bound(const Vec3& q, const Vec3& anchor, const PathSet& paths, const LinkSurrogate& link,
                            double wavelength);

/// Flattened surrogate F-bar(q) = sum 2|b_l| cos(2 pi d_l . q / lambda - angle(b_l)) over every
/// (sample, UT, path) term, weights folded into the amplitudes.
struct SurrogateTerms {
  Vec3 anchor = Vec3::Zero();
  double wavelength = 0.125;
  std::vector<double> dx, dy, dz, amplitude, phase;
  std::vector<double> varpi;   // one per (sample, UT), already weighted
  double offset = 0.0;         // F(q) >= f_bar(q) + offset, equality at the anchor

  std::size_t size() const { return amplitude.size(); }
};

SurrogateTerms build_surrogate(const Vec3& anchor, const Frame& orientation, const ApProblem& problem);

double f_bar(const Vec3& q, const SurrogateTerms& terms);
Vec3 grad_f_bar(const Vec3& q, const SurrogateTerms& terms);
Eigen::Matrix3d hessian_f_bar(const Vec3& q, const SurrogateTerms& terms);

/// delta = 24 pi^2 / lambda^2 * sum |b|, which dominates the Hessian of F-bar everywhere.
double delta_bound(const SurrogateTerms& terms);

/// Componentwise clamp into the region.
Vec3 project_box(const Vec3& q, const BoxRegion& region);

struct PositionSettings {
  double tolerance = 1e-3;
  int max_iters = 200;
};

struct PositionResult {
  Vec3 position = Vec3::Zero();
  std::vector<double> objective_trace;   // F at each accepted iterate, starting with the input
  std::vector<double> surrogate_gain;    // F-bar(q_{i+1}) - F-bar(q_i) under the i-th surrogate
  int iterations = 0;
};

/// Projected SCA ascent on F(q) with the orientation held fixed:
/// q <- project_box(q + grad F-bar(q) / delta).
PositionResult optimize_position(const AntennaPose& start, const BoxRegion& region, const ApProblem& problem,
                                 const PositionSettings& settings = {});

}  // namespace sixdma
