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

#include "sixdma/types.hpp"

namespace sixdma {

// MMSE combining, SINR / rate evaluation and the fractional-programming
// (FP) reformulation of the weighted sum rate.
//
// Convention: H and W are (ports * M) x K, column k belongs to UT k. The FP
// objective is reported in bits (natural-log form divided by ln 2) so that at
// the optimal auxiliaries it equals the weighted sum rate exactly. The
// per-AP coefficients c and V are left in natural units; the subproblem
// objectives built from them (F and Q) are therefore ln 2 times the change in
// the FP objective.

/// W = (H H^H + noise I)^-1 H, computed with a Cholesky solve.
/// Throws std::invalid_argument if H has non-finite entries or noise <= 0.
CMatrix mmse_combiner(const CMatrix& H, double noise);

/// SINR of UT k with combiner w: |w^H h_k|^2 / (sum_{j != k} |w^H h_j|^2 + ||w||^2 noise).
/// A zero combiner yields 0.
double sinr(const CMatrix& H, const CVector& w, int k, double noise);

/// SINR of every UT with column k of W as its combiner.
RVector sinr_all(const CMatrix& H, const CMatrix& W, double noise);

/// Per-UT rates log2(1 + SINR_k).
RVector rates(const CMatrix& H, const CMatrix& W, double noise);

/// Weighted sum rate sum_k omega_k log2(1 + SINR_k) in bps/Hz.
double wsr(const CMatrix& H, const CMatrix& W, const RVector& weights, double noise);

/// Weighted sum rate with the MMSE combiner for H.
double wsr_mmse(const CMatrix& H, const RVector& weights, double noise);

/// FP auxiliary variables.
struct FpAux {
  RVector alpha;   // SINR surrogates, >= 0
  CVector beta;
};

/// Optimal alpha for fixed (H, W): alpha_k equals the SINR of UT k.
RVector update_alpha(const CMatrix& H, const CMatrix& W, double noise);

/// Optimal beta for fixed (H, W, alpha).
CVector update_beta(const CMatrix& H, const CMatrix& W, const RVector& alpha, const RVector& weights, double noise);

/// Both auxiliary updates in sequence.
FpAux update_aux(const CMatrix& H, const CMatrix& W, const RVector& weights, double noise);

/// FP objective (bits). Equals wsr(H, W) when alpha, beta come from the updates above.
double quadratic_objective(const CMatrix& H, const CMatrix& W, const RVector& alpha, const CVector& beta,
                           const RVector& weights, double noise);

/// Coefficients of the part of the FP objective that depends on the rows of
/// one AP. With ports P (1 uni, 2 dual): c is K x P and coupling is P x P
/// Hermitian PSD. For uni-polarized antennas coupling is the scalar v_m.
struct ApCoefficients {
  CMatrix c;
  CMatrix coupling;

  int ports() const { return static_cast<int>(coupling.rows()); }
  double v() const { return coupling(0, 0).real(); }
};

/// Coefficients for AP m given the current (H, W, alpha, beta). `num_aps` is
/// M; the AP owns rows {p * M + m}.
ApCoefficients coeffs_cv(int m, int num_aps, const CMatrix& H, const CMatrix& W, const FpAux& aux,
                         const RVector& weights);

/// Subproblem objective sum_k 2 Re{sum_p h_kp c_kp} - h_k^H V h_k for the
/// AP's channel entries h (K x P). Natural units.
double ap_objective(const CMatrix& h, const ApCoefficients& coeffs);

}  // namespace sixdma
