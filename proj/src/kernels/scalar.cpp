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

#include "sixdma/kernels/kernels.hpp"

namespace sixdma::kernels {
namespace {

void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void field_sum_scalar(const FieldTerms& t, double wavenumber, const Positions& q, std::span<std::complex<double>> out) {
  const std::size_t terms = t.dx.size();
  for (std::size_t n = 0; n < out.size(); ++n) {
    double re = 0.0, im = 0.0;
    for (std::size_t l = 0; l < terms; ++l) {
      const double phi = wavenumber * (t.dx[l] * q.x[n] + t.dy[l] * q.y[n] + t.dz[l] * q.z[n]);
      const double cs = std::cos(phi), sn = std::sin(phi);
      // (cr + j ci)(cos - j sin)
      re += t.coeff_re[l] * cs + t.coeff_im[l] * sn;
      im += t.coeff_im[l] * cs - t.coeff_re[l] * sn;
    }
    out[n] = {re, im};
  }
}

CosineSum cosine_sum_scalar(const CosineTerms& t, double wavenumber, const double q[3]) {
  CosineSum r;
  double gx = 0.0, gy = 0.0, gz = 0.0, value = 0.0;
  for (std::size_t l = 0; l < t.dx.size(); ++l) {
    const double arg = wavenumber * (t.dx[l] * q[0] + t.dy[l] * q[1] + t.dz[l] * q[2]) - t.phase[l];
    const double a = t.amplitude[l];
    value += a * std::cos(arg);
    const double as = a * std::sin(arg);
    gx += as * t.dx[l];
    gy += as * t.dy[l];
    gz += as * t.dz[l];
  }
  r.value = 2.0 * value;
  r.gradient[0] = -2.0 * wavenumber * gx;
  r.gradient[1] = -2.0 * wavenumber * gy;
  r.gradient[2] = -2.0 * wavenumber * gz;
  return r;
}

constexpr KernelTable kScalar{"scalar", &sincos_scalar, &field_sum_scalar, &cosine_sum_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace sixdma::kernels
