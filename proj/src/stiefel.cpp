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

#include "sixdma/stiefel.hpp"

#include <Eigen/QR>

namespace sixdma::stiefel {

double inner(const Frame& x, const Frame& y) { return x.cwiseProduct(y).sum(); }

double tangent_error(const Frame& a, const Frame& z) {
  return (z.transpose() * a + a.transpose() * z).norm();
}

Frame riemannian_grad(const Frame& a, const Frame& egrad) {
  const Eigen::MatrixXd sym = a.transpose() * egrad;
  return egrad - a * (0.5 * (sym + sym.transpose()));
}

Frame transport(const Frame& direction, const Frame& a_new) { return riemannian_grad(a_new, direction); }

std::optional<Frame> retract(const Frame& a, const Frame& step) {
  if ((step.array() == 0.0).all()) return a;
  const Eigen::MatrixXd target = a + step;
  const Eigen::Index cols = target.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(target);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const double scale = target.norm();
  Frame q = qr.householderQ() * Eigen::MatrixXd::Identity(target.rows(), cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (std::abs(r(j, j)) <= 1e-12 * scale) return std::nullopt;
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

int manifold_dimension(const Frame& a) {
  const auto p = static_cast<int>(a.cols());
  return 3 * p - p * (p + 1) / 2;
}

}  // namespace sixdma::stiefel
