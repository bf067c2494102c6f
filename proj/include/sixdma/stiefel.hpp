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

#include <optional>

#include "sixdma/types.hpp"

namespace sixdma::stiefel {

// Geometry of the Stiefel manifold {A in R^{3 x p} : A^T A = I} for p = 2
// (uni-polarized frame [u, v]) and p = 3 (dual-polarized [u, v1, v2]).

/// Frobenius inner product <X, Y> = tr(X^T Y).
double inner(const Frame& x, const Frame& y);

/// ||Z^T A + A^T Z||_F: zero iff Z is tangent at A.
double tangent_error(const Frame& a, const Frame& z);

/// Orthogonal projection of a Euclidean gradient onto the tangent space at A:
/// G - A (A^T G + G^T A) / 2.
Frame riemannian_grad(const Frame& a, const Frame& egrad);

/// Projection-based vector transport of a tangent direction to the tangent
/// space at `a_new`.
Frame transport(const Frame& direction, const Frame& a_new);

/// QR retraction: Q factor of A + step with a positive R diagonal. A zero
/// step returns A unchanged. Returns nullopt when A + step is numerically
/// rank deficient.
std::optional<Frame> retract(const Frame& a, const Frame& step);

/// Intrinsic dimension of the manifold for the frame's column count.
int manifold_dimension(const Frame& a);

}  // namespace sixdma::stiefel
