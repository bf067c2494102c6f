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

#include <span>
#include <vector>

#include "sixdma/scene.hpp"
#include "sixdma/types.hpp"

namespace sixdma {

/// One AP's antenna state: position in its local box and orientation frame.
struct AntennaPose {
  Vec3 position = Vec3::Zero();
  Frame orientation;   // 3x2 [u, v] or 3x3 [u, v1, v2]

  int ports() const { return static_cast<int>(orientation.cols()) - 1; }
  Vec3 normal() const { return orientation.col(0); }
  Vec3 polarization(int port) const { return orientation.col(port + 1); }
};

using Poses = std::vector<AntennaPose>;

/// Orientation used by the fixed-antenna benchmark: u = e1, v = e2 (and
/// v2 = e3 for dual polarization).
Frame fixed_frame(Polarization mode);

/// Largest of ||A^T A - I||_F over the poses' frames.
double orthonormality_error(const Frame& frame);

/// Field-response vector: entry l = exp(j 2 pi d_l . q / lambda).
CVector frv(const Vec3& q, const PathSet& paths, double wavelength);

/// Effective aperture loss max(d . u, 0).
double aperture_loss(const Vec3& normal, const Vec3& direction);

/// Polarization loss |e . v|^2.
double polarization_loss(const Vec3& polarization, const Vec3& field);

/// Diagonal of the per-path gain matrix for normal u and polarization v:
/// lambda / (4 pi d) * sqrt(aperture * polarization).
RVector gain_diagonal(const Vec3& normal, const Vec3& polarization, const PathSet& paths, double wavelength);

/// Per-path complex amplitude G a for one port (what multiplies the FRV).
CVector weighted_prv(const Vec3& normal, const Vec3& polarization, const PathSet& paths, double wavelength);

/// h = frv(q)^H G(u, v) a for the given port of the pose.
cdouble channel_coeff(const AntennaPose& pose, const PathSet& paths, double wavelength, int port = 0);

/// Channel coefficient of one port evaluated at many positions with a fixed
/// orientation (vectorized kernel path).
void channel_coeff_batch(const Vec3& normal, const Vec3& polarization, const PathSet& paths, double wavelength,
                         std::span<const double> x, std::span<const double> y, std::span<const double> z,
                         std::span<cdouble> out);

/// Collective channel: rows ordered port-major (row = port * M + m), columns UTs.
/// Uni-polarized gives M x K, dual-polarized [H1; H2] of size 2M x K.
CMatrix assemble(std::span<const AntennaPose> poses, const PathTable& table, double wavelength,
                 Polarization mode);

/// Recomputes the rows owned by AP m in place.
void update_ap_rows(CMatrix& H, int m, const AntennaPose& pose, const PathTable& table, double wavelength);

}  // namespace sixdma
