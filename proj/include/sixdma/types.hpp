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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

namespace sixdma {

using cdouble = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Antenna orientation frame: columns [u, v] (uni-polarized, 3x2) or
/// [u, v1, v2] (dual-polarized, 3x3). Fixed capacity, no heap allocation.
using Frame = Eigen::Matrix<double, 3, Eigen::Dynamic, 0, 3, 3>;

enum class Polarization { uni, dual };

/// Number of receive ports of one antenna for the given polarization mode.
constexpr int port_count(Polarization mode) { return mode == Polarization::dual ? 2 : 1; }

inline std::string to_string(Polarization mode) { return mode == Polarization::dual ? "dual" : "uni"; }

inline Polarization polarization_from_string(const std::string& s) {
  if (s == "uni") return Polarization::uni;
  if (s == "dual") return Polarization::dual;
  throw std::invalid_argument("unknown polarization mode '" + s + "' (expected uni|dual)");
}

}  // namespace sixdma
