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

#include "sixdma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sixdma/kernels/kernels.hpp"

namespace sixdma {

Frame fixed_frame(Polarization mode) {
  Frame a(3, port_count(mode) + 1);
  a.setZero();
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  if (mode == Polarization::dual) a(2, 2) = 1.0;
  return a;
}

double orthonormality_error(const Frame& frame) {
  const Eigen::MatrixXd gram = frame.transpose() * frame;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).norm();
}

CVector frv(const Vec3& q, const PathSet& paths, double wavelength) {
  const double k = 2.0 * std::numbers::pi / wavelength;
  CVector f(paths.size());
  for (int l = 0; l < paths.size(); ++l) f[l] = std::polar(1.0, k * paths.directions.col(l).dot(q));
  return f;
}

double aperture_loss(const Vec3& normal, const Vec3& direction) { return std::max(direction.dot(normal), 0.0); }

double polarization_loss(const Vec3& polarization, const Vec3& field) {
  const double p = field.dot(polarization);
  return p * p;
}

RVector gain_diagonal(const Vec3& normal, const Vec3& polarization, const PathSet& paths, double wavelength) {
  const double free_space = wavelength / (4.0 * std::numbers::pi * paths.distance);
  RVector g(paths.size());
  for (int l = 0; l < paths.size(); ++l) {
    const double product = aperture_loss(normal, paths.directions.col(l)) *
                           polarization_loss(polarization, paths.fields.col(l));
    g[l] = product > 0.0 ? free_space * std::sqrt(product) : 0.0;
  }
  return g;
}

CVector weighted_prv(const Vec3& normal, const Vec3& polarization, const PathSet& paths, double wavelength) {
  return gain_diagonal(normal, polarization, paths, wavelength).cwiseProduct(paths.prv);
}

cdouble channel_coeff(const AntennaPose& pose, const PathSet& paths, double wavelength, int port) {
  const CVector ga = weighted_prv(pose.normal(), pose.polarization(port), paths, wavelength);
  return frv(pose.position, paths, wavelength).dot(ga);  // dot() conjugates the first operand
}

void channel_coeff_batch(const Vec3& normal, const Vec3& polarization, const PathSet& paths, double wavelength,
                         std::span<const double> x, std::span<const double> y, std::span<const double> z,
                         std::span<cdouble> out) {
  const int n = paths.size();
  const CVector ga = weighted_prv(normal, polarization, paths, wavelength);
  std::vector<double> buf(static_cast<std::size_t>(5 * n));
  auto col = [&](int i) { return std::span<double>(buf).subspan(static_cast<std::size_t>(i * n), static_cast<std::size_t>(n)); };
  for (int l = 0; l < n; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    col(0)[ul] = paths.directions(0, l);
    col(1)[ul] = paths.directions(1, l);
    col(2)[ul] = paths.directions(2, l);
    col(3)[ul] = ga[l].real();
    col(4)[ul] = ga[l].imag();
  }
  const kernels::FieldTerms terms{col(0), col(1), col(2), col(3), col(4)};
  kernels::active_kernels().field_sum(terms, 2.0 * std::numbers::pi / wavelength, kernels::Positions{x, y, z}, out);
}

void update_ap_rows(CMatrix& H, int m, const AntennaPose& pose, const PathTable& table, double wavelength) {
  const int num_aps = table.num_aps();
  for (int port = 0; port < pose.ports(); ++port)
    for (int k = 0; k < table.num_uts(); ++k) H(port * num_aps + m, k) = channel_coeff(pose, table.at(k, m), wavelength, port);
}

CMatrix assemble(std::span<const AntennaPose> poses, const PathTable& table, double wavelength, Polarization mode) {
  const int num_aps = table.num_aps();
  if (static_cast<int>(poses.size()) != num_aps)
    throw std::invalid_argument("assemble: pose count does not match the number of APs");
  const int ports = port_count(mode);
  for (const auto& pose : poses)
    if (pose.ports() != ports || pose.orientation.rows() != 3)
      throw std::invalid_argument("assemble: orientation frame does not match polarization mode");
  CMatrix H(ports * num_aps, table.num_uts());
  for (int m = 0; m < num_aps; ++m) update_ap_rows(H, m, poses[static_cast<std::size_t>(m)], table, wavelength);
  return H;
}

}  // namespace sixdma
