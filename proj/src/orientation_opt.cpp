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

#include "sixdma/orientation_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sixdma/stiefel.hpp"

namespace sixdma {

Frame euclidean_grad(const FrameObjective& q, const Frame& a, double step, bool central) {
  Frame g(a.rows(), a.cols());
  const double base = central ? 0.0 : q(a);
  Frame probe = a;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      probe(i, j) = a(i, j) + step;
      const double up = q(probe);
      if (central) {
        probe(i, j) = a(i, j) - step;
        g(i, j) = (up - q(probe)) / (2.0 * step);
      } else {
        g(i, j) = (up - base) / step;
      }
      probe(i, j) = a(i, j);
    }
  }
  return g;
}

OrientationObjective::OrientationObjective(const Vec3& position, const ApProblem& problem) {
  for (const auto& s : problem.samples) {
    Sample sample{{}, &s.coeffs, s.weight};
    for (const PathSet* paths : s.links) {
      const double free_space = problem.wavelength / (4.0 * std::numbers::pi * paths->distance);
      Link link{paths->directions, paths->fields, frv(position, *paths, problem.wavelength).conjugate()};
      link.z = link.z.cwiseProduct(paths->prv) * free_space;
      sample.links.push_back(std::move(link));
    }
    samples_.push_back(std::move(sample));
  }
}

double OrientationObjective::operator()(const Frame& a) const {
  const int ports = static_cast<int>(a.cols()) - 1;
  const Vec3 u = a.col(0);
  double total = 0.0;
  for (const auto& s : samples_) {
    const ApCoefficients& co = *s.coeffs;
    double part = 0.0;
    for (std::size_t k = 0; k < s.links.size(); ++k) {
      const Link& link = s.links[k];
      cdouble h[2] = {0.0, 0.0};
      for (Eigen::Index l = 0; l < link.z.size(); ++l) {
        const double aperture = link.directions.col(l).dot(u);
        if (aperture <= 0.0) continue;
        const double root = std::sqrt(aperture);
        for (int p = 0; p < ports; ++p) {
          const double pol = std::abs(link.fields.col(l).dot(a.col(p + 1)));
          h[p] += link.z[l] * (root * pol);
        }
      }
      const auto row = static_cast<Eigen::Index>(k);
      for (int p = 0; p < ports; ++p) {
        part += 2.0 * (h[p] * co.c(row, p)).real();
        for (int r = 0; r < ports; ++r) part -= (std::conj(h[p]) * co.coupling(p, r) * h[r]).real();
      }
    }
    total += s.weight * part;
  }
  return total;
}

namespace {

struct LineSearch {
  Frame frame;
  double value;
  bool ok = false;
};

LineSearch armijo(const FrameObjective& q, const Frame& a, double value, const Frame& dir, double slope,
                  const OrientationSettings& s) {
  for (double tau = s.initial_step; tau >= s.min_step; tau *= s.shrink) {
    const auto cand = stiefel::retract(a, tau * dir);
    if (!cand) continue;
    const double v = q(*cand);
    if (v >= value + s.armijo * tau * slope) return {*cand, v, true};
  }
  return {a, value, false};
}

}  // namespace

OrientationResult optimize_orientation(const FrameObjective& q, const Frame& start,
                                       const OrientationSettings& settings) {
  OrientationResult result;
  Frame a = start;
  double value = q(a);
  result.objective_trace.push_back(value);
  result.max_orthonormality_error = orthonormality_error(a);
  const int restart_every = 3 * stiefel::manifold_dimension(a);

  Frame grad = stiefel::riemannian_grad(a, euclidean_grad(q, a, settings.fd_step));
  Frame dir = grad;
  int since_restart = 0;

  for (int it = 0; it < settings.max_iters; ++it) {
    const double grad_sq = stiefel::inner(grad, grad);
    if (!(grad_sq > 0.0)) break;
    double slope = stiefel::inner(grad, dir);
    if (!(slope > 0.0)) {
      dir = grad;
      slope = grad_sq;
      since_restart = 0;
      ++result.restarts;
    }
    LineSearch ls = armijo(q, a, value, dir, slope, settings);
    if (!ls.ok && since_restart > 0) {
      dir = grad;
      since_restart = 0;
      ++result.restarts;
      ls = armijo(q, a, value, dir, grad_sq, settings);
    }
    if (!ls.ok) break;

    ++result.iterations;
    const double gain = ls.value - value;
    result.objective_trace.push_back(ls.value);
    result.max_orthonormality_error = std::max(result.max_orthonormality_error, orthonormality_error(ls.frame));

    const Frame grad_new = stiefel::riemannian_grad(ls.frame, euclidean_grad(q, ls.frame, settings.fd_step));
    const Frame moved_dir = stiefel::transport(dir, ls.frame);
    const Frame moved_grad = stiefel::transport(grad, ls.frame);
    result.max_tangent_error = std::max({result.max_tangent_error, stiefel::tangent_error(ls.frame, moved_dir),
                                         stiefel::tangent_error(ls.frame, moved_grad)});
    double kappa = std::max(0.0, stiefel::inner(grad_new, grad_new - moved_grad) / grad_sq);
    if (++since_restart >= restart_every) {
      kappa = 0.0;
      since_restart = 0;
      ++result.restarts;
    }
    dir = grad_new + kappa * moved_dir;
    grad = grad_new;
    a = ls.frame;
    value = ls.value;
    if (gain < settings.tolerance) break;
  }
  result.orientation = a;
  return result;
}

OrientationResult optimize_orientation(const AntennaPose& start, const ApProblem& problem,
                                       const OrientationSettings& settings) {
  const OrientationObjective objective(start.position, problem);
  return optimize_orientation(FrameObjective(std::cref(objective)), start.orientation, settings);
}

}  // namespace sixdma
