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

#include "sixdma/position_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sixdma/kernels/kernels.hpp"

namespace sixdma {
namespace {

double wavenumber(double wavelength) { return 2.0 * std::numbers::pi / wavelength; }

// Largest eigenvalue of B V^T B^H through the (ports x ports) product (B^H B) V^T.
double max_eigenvalue(const Eigen::MatrixXcd& gains, const CMatrix& coupling) {
  const CMatrix prod = (gains.adjoint() * gains) * coupling.transpose();
  if (prod.rows() == 1) return std::max(prod(0, 0).real(), 0.0);
  if (prod.rows() == 2) {
    // Eigenvalues of a product of two Hermitian PSD matrices are real and >= 0.
    const double tr = prod.trace().real();
    const double det = prod.determinant().real();
    return 0.5 * (tr + std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
  }
  throw std::invalid_argument("max_eigenvalue: more than two ports per antenna");
}

}  // namespace

LinkSurrogate build_link_surrogate(const Vec3& anchor, const PathSet& paths, const Frame& orientation,
                                   const CVector& c_row, const CMatrix& coupling, double wavelength) {
  const int ports = static_cast<int>(orientation.cols()) - 1;
  LinkSurrogate link;
  link.gains.resize(paths.size(), ports);
  for (int p = 0; p < ports; ++p)
    link.gains.col(p) = weighted_prv(orientation.col(0), orientation.col(p + 1), paths, wavelength);
  link.coupling = coupling;
  link.varpi = max_eigenvalue(link.gains, coupling);

  const CVector f_anchor = frv(anchor, paths, wavelength);
  const CVector c_f = link.gains * (coupling.transpose() * (link.gains.adjoint() * f_anchor));
  link.b = link.varpi * f_anchor - c_f + link.gains * c_row;
  return link;
}

double link_quadratic(const Vec3& q, const PathSet& paths, const LinkSurrogate& link, double wavelength) {
  const CVector f = frv(q, paths, wavelength);
  const CVector bhf = link.gains.adjoint() * f;
  return (bhf.adjoint() * link.coupling.transpose() * bhf).value().real();
}

double link_quadratic_bound(const Vec3& q, const Vec3& anchor, const PathSet& paths, const LinkSurrogate& link,
                            double wavelength) {
  const CVector f = frv(q, paths, wavelength);
  const CVector fi = frv(anchor, paths, wavelength);
  auto minus_c = [&](const CVector& x) -> CVector {
    return link.varpi * x - link.gains * (link.coupling.transpose() * (link.gains.adjoint() * x));
  };
  const CVector r = minus_c(fi);
  return link.varpi * f.squaredNorm() - 2.0 * f.dot(r).real() + fi.dot(r).real();
}

SurrogateTerms build_surrogate(const Vec3& anchor, const Frame& orientation, const ApProblem& problem) {
  SurrogateTerms t;
  t.anchor = anchor;
  t.wavelength = problem.wavelength;
  for (const auto& sample : problem.samples) {
    for (std::size_t k = 0; k < sample.links.size(); ++k) {
      const PathSet& paths = *sample.links[k];
      const CVector c_row = sample.coeffs.c.row(static_cast<Eigen::Index>(k)).transpose();
      const LinkSurrogate link =
          build_link_surrogate(anchor, paths, orientation, c_row, sample.coeffs.coupling, problem.wavelength);
      t.varpi.push_back(sample.weight * link.varpi);
      // offset = -2 varpi L + f_i^H C f_i
      t.offset += sample.weight * (-2.0 * link.varpi * paths.size() +
                                   link_quadratic(anchor, paths, link, problem.wavelength));
      for (int l = 0; l < paths.size(); ++l) {
        t.dx.push_back(paths.directions(0, l));
        t.dy.push_back(paths.directions(1, l));
        t.dz.push_back(paths.directions(2, l));
        t.amplitude.push_back(sample.weight * std::abs(link.b[l]));
        t.phase.push_back(std::arg(link.b[l]));
      }
    }
  }
  return t;
}

namespace {

kernels::CosineSum evaluate(const Vec3& q, const SurrogateTerms& t) {
  const kernels::CosineTerms view{t.dx, t.dy, t.dz, t.amplitude, t.phase};
  const double qa[3] = {q.x(), q.y(), q.z()};
  return kernels::active_kernels().cosine_sum(view, wavenumber(t.wavelength), qa);
}

}  // namespace

double f_bar(const Vec3& q, const SurrogateTerms& terms) { return evaluate(q, terms).value; }

Vec3 grad_f_bar(const Vec3& q, const SurrogateTerms& terms) {
  const auto r = evaluate(q, terms);
  return {r.gradient[0], r.gradient[1], r.gradient[2]};
}

Eigen::Matrix3d hessian_f_bar(const Vec3& q, const SurrogateTerms& t) {
  const double k = wavenumber(t.wavelength);
  Eigen::Matrix3d hess = Eigen::Matrix3d::Zero();
  for (std::size_t l = 0; l < t.size(); ++l) {
    const Vec3 d(t.dx[l], t.dy[l], t.dz[l]);
    const double arg = k * d.dot(q) - t.phase[l];
    hess -= 2.0 * k * k * t.amplitude[l] * std::cos(arg) * (d * d.transpose());
  }
  return hess;
}

double delta_bound(const SurrogateTerms& terms) {
  double sum = 0.0;
  for (double a : terms.amplitude) sum += a;
  return 24.0 * std::numbers::pi * std::numbers::pi / (terms.wavelength * terms.wavelength) * sum;
}

Vec3 project_box(const Vec3& q, const BoxRegion& region) { return q.cwiseMax(region.min).cwiseMin(region.max); }

PositionResult optimize_position(const AntennaPose& start, const BoxRegion& region, const ApProblem& problem,
                                 const PositionSettings& settings) {
  PositionResult result;
  AntennaPose pose = start;
  pose.position = project_box(start.position, region);
  double current = subproblem_objective(pose, problem);
  result.objective_trace.push_back(current);

  for (int i = 0; i < settings.max_iters; ++i) {
    const SurrogateTerms terms = build_surrogate(pose.position, pose.orientation, problem);
    const double delta = delta_bound(terms);
    if (!(delta > 0.0)) break;   // objective constant in q

    const auto at_anchor = evaluate(pose.position, terms);
    const Vec3 grad(at_anchor.gradient[0], at_anchor.gradient[1], at_anchor.gradient[2]);
    const Vec3 next = project_box(pose.position + grad / delta, region);

    AntennaPose trial = pose;
    trial.position = next;
    const double value = subproblem_objective(trial, problem);
    ++result.iterations;
    if (value < current) break;   // only reachable through rounding; keep the incumbent

    result.surrogate_gain.push_back(f_bar(next, terms) - at_anchor.value);
    result.objective_trace.push_back(value);
    pose = trial;
    const double gain = value - current;
    current = value;
    if (gain < settings.tolerance) break;
  }
  result.position = pose.position;
  return result;
}

}  // namespace sixdma
