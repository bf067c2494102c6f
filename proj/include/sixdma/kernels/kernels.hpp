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

// Data-parallel inner loops shared by the channel model, the position
// surrogate and the grid searches. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is selected at runtime when the CPU
// supports it. Set SIXDMA_KERNELS=scalar to force the reference path.

#include <complex>
#include <span>
#include <string_view>

namespace sixdma::kernels {

/// Plane-wave terms with complex coefficients, structure-of-arrays.
struct FieldTerms {
  std::span<const double> dx, dy, dz;    // unit wave vectors
  std::span<const double> coeff_re, coeff_im;
};

/// Plane-wave terms with real amplitude and phase offset.
struct CosineTerms {
  std::span<const double> dx, dy, dz;
  std::span<const double> amplitude;
  std::span<const double> phase;
};

struct Positions {
  std::span<const double> x, y, z;
};

struct CosineSum {
  double value = 0.0;
  double gradient[3] = {0.0, 0.0, 0.0};
};

struct KernelTable {
  std::string_view name;

  /// s[i] = sin(x[i]), c[i] = cos(x[i]). Arguments up to ~1e6 in magnitude.
  void (*sincos)(std::span<const double> x, std::span<double> s, std::span<double> c);

  /// out[n] = sum_l coeff_l * exp(-j * wavenumber * d_l . q_n).
  void (*field_sum)(const FieldTerms& terms, double wavenumber, const Positions& q,
                    std::span<std::complex<double>> out);

  /// value = sum_l 2 a_l cos(wavenumber * d_l . q - phase_l) and its gradient in q.
  CosineSum (*cosine_sum)(const CosineTerms& terms, double wavenumber, const double q[3]);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Table used by the library: AVX2 when available unless SIXDMA_KERNELS=scalar.
const KernelTable& active_kernels();

}  // namespace sixdma::kernels
