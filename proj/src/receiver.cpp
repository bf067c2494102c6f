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

#include "sixdma/receiver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace sixdma {

CMatrix mmse_combiner(const CMatrix& H, double noise) {
  if (!H.allFinite()) throw std::invalid_argument("mmse_combiner: channel matrix has non-finite entries");
  if (!(noise > 0.0)) throw std::invalid_argument("mmse_combiner: normalized noise power must be > 0");
  CMatrix gram = H * H.adjoint();
  gram.diagonal().array() += noise;
  return gram.llt().solve(H);
}

double sinr(const CMatrix& H, const CVector& w, int k, double noise) {
  const double wnorm2 = w.squaredNorm();
  if (wnorm2 == 0.0) return 0.0;
  const CVector proj = H.adjoint() * w;   // entry j = conj(w^H h_j)
  double interference = wnorm2 * noise;
  for (Eigen::Index j = 0; j < proj.size(); ++j)
    if (j != k) interference += std::norm(proj[j]);
  return std::norm(proj[k]) / interference;
}

RVector sinr_all(const CMatrix& H, const CMatrix& W, double noise) {
  RVector s(H.cols());
  for (Eigen::Index k = 0; k < H.cols(); ++k) s[k] = sinr(H, W.col(k), static_cast<int>(k), noise);
  return s;
}

RVector rates(const CMatrix& H, const CMatrix& W, double noise) {
  return sinr_all(H, W, noise).array().log1p() / std::numbers::ln2;
}

double wsr(const CMatrix& H, const CMatrix& W, const RVector& weights, double noise) {
  return weights.dot(rates(H, W, noise));
}

double wsr_mmse(const CMatrix& H, const RVector& weights, double noise) {
  return wsr(H, mmse_combiner(H, noise), weights, noise);
}

RVector update_alpha(const CMatrix& H, const CMatrix& W, double noise) { return sinr_all(H, W, noise); }

CVector update_beta(const CMatrix& H, const CMatrix& W, const RVector& alpha, const RVector& weights, double noise) {
  const CMatrix G = W.adjoint() * H;   // G(k, j) = w_k^H h_j
  CVector beta(H.cols());
  for (Eigen::Index k = 0; k < H.cols(); ++k) {
    const double denom = G.row(k).squaredNorm() + W.col(k).squaredNorm() * noise;
    beta[k] = denom > 0.0 ? std::sqrt(weights[k] * (1.0 + alpha[k])) * G(k, k) / denom : cdouble(0.0);
  }
  return beta;
}

FpAux update_aux(const CMatrix& H, const CMatrix& W, const RVector& weights, double noise) {
  FpAux aux;
  aux.alpha = update_alpha(H, W, noise);
  aux.beta = update_beta(H, W, aux.alpha, weights, noise);
  return aux;
}

double quadratic_objective(const CMatrix& H, const CMatrix& W, const RVector& alpha, const CVector& beta,
                           const RVector& weights, double noise) {
  const CMatrix G = W.adjoint() * H;
  double total = 0.0;
  for (Eigen::Index k = 0; k < H.cols(); ++k) {
    const double a = alpha[k];
    const double b_k = W.col(k).squaredNorm() * noise + G.row(k).squaredNorm();
    total += weights[k] * (std::log1p(a) - a);
    total += 2.0 * std::sqrt(weights[k] * (1.0 + a)) * (std::conj(beta[k]) * G(k, k)).real();
    total -= std::norm(beta[k]) * b_k;
  }
  return total / std::numbers::ln2;
}

ApCoefficients coeffs_cv(int m, int num_aps, const CMatrix& H, const CMatrix& W, const FpAux& aux,
                         const RVector& weights) {
  const Eigen::Index num_uts = H.cols();
  const int ports = static_cast<int>(H.rows()) / num_aps;
  auto row = [&](int p) { return static_cast<Eigen::Index>(p * num_aps + m); };

  // rest(j, k) = sum over rows not owned by AP m of conj(W(s, j)) H(s, k).
  CMatrix rest = W.adjoint() * H;
  for (int p = 0; p < ports; ++p) rest -= W.row(row(p)).adjoint() * H.row(row(p));

  ApCoefficients out;
  out.c.resize(num_uts, ports);
  out.coupling = CMatrix::Zero(ports, ports);
  for (int p = 0; p < ports; ++p) {
    for (Eigen::Index k = 0; k < num_uts; ++k) {
      cdouble value = std::sqrt(weights[k] * (1.0 + aux.alpha[k])) * std::conj(aux.beta[k]) *
                      std::conj(W(row(p), k));
      for (Eigen::Index j = 0; j < num_uts; ++j)
        value -= std::norm(aux.beta[j]) * std::conj(W(row(p), j)) * std::conj(rest(j, k));
      out.c(k, p) = value;
    }
    for (int q = 0; q < ports; ++q)
      for (Eigen::Index j = 0; j < num_uts; ++j)
        out.coupling(p, q) += std::norm(aux.beta[j]) * W(row(p), j) * std::conj(W(row(q), j));
  }
  return out;
}

double ap_objective(const CMatrix& h, const ApCoefficients& coeffs) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    const CVector hk = h.row(k).transpose();
    total += 2.0 * (hk.transpose() * coeffs.c.row(k).transpose()).value().real();
    total -= (hk.adjoint() * coeffs.coupling * hk).value().real();
  }
  return total;
}

}  // namespace sixdma
