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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and is only entered after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "sixdma/kernels/kernels.hpp"

namespace sixdma::kernels {
namespace {

// pi/2 split in three parts for Cody-Waite reduction.
constexpr double kPio2Hi = 1.57079625129699707031E0;
constexpr double kPio2Mid = 7.54978941586159635335E-8;
constexpr double kPio2Lo = 5.39030285815811905290E-15;
constexpr double kTwoOverPi = 0.63661977236758134308;

// Minimax polynomials on [-pi/4, pi/4] (Cephes sin.c).
constexpr double kSin[6] = {1.58962301576546568060E-10, -2.50507477628578072866E-8, 2.75573136213857245213E-6,
                            -1.98412698295895385996E-4, 8.33333333332211858878E-3, -1.66666666666666307295E-1};
constexpr double kCos[6] = {-1.13585365213876817300E-11, 2.08757008419747316778E-9, -2.75573141792967388112E-7,
                            2.48015872888517045348E-5,   -1.38888888888730564116E-3, 4.16666666666665929218E-2};

inline __m256d polevl5(__m256d z, const double (&c)[6]) {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[i]));
  return p;
}

inline void sincos_pd(__m256d x, __m256d& s, __m256d& c) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), polevl5(z, kSin), r);
  const __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(z, z), polevl5(z, kCos),
                                        _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

  const __m256i quadrant = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quadrant, one), one));
  const __m256d sin_sign = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(quadrant, two), 62));
  const __m256d cos_sign =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(quadrant, one), two), 62));

  s = _mm256_xor_pd(_mm256_blendv_pd(sin_r, cos_r, swap), sin_sign);
  c = _mm256_xor_pd(_mm256_blendv_pd(cos_r, sin_r, swap), cos_sign);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    __m256d vs, vc;
    sincos_pd(_mm256_loadu_pd(x.data() + i), vs, vc);
    _mm256_storeu_pd(s.data() + i, vs);
    _mm256_storeu_pd(c.data() + i, vc);
  }
  for (; i < x.size(); ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void field_sum_avx2(const FieldTerms& t, double wavenumber, const Positions& q, std::span<std::complex<double>> out) {
  const std::size_t terms = t.dx.size();
  const __m256d kk = _mm256_set1_pd(wavenumber);
  std::size_t n = 0;
  for (; n + 4 <= out.size(); n += 4) {
    const __m256d x = _mm256_loadu_pd(q.x.data() + n);
    const __m256d y = _mm256_loadu_pd(q.y.data() + n);
    const __m256d z = _mm256_loadu_pd(q.z.data() + n);
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    for (std::size_t l = 0; l < terms; ++l) {
      __m256d proj = _mm256_mul_pd(_mm256_set1_pd(t.dx[l]), x);
      proj = _mm256_fmadd_pd(_mm256_set1_pd(t.dy[l]), y, proj);
      proj = _mm256_fmadd_pd(_mm256_set1_pd(t.dz[l]), z, proj);
      __m256d sn, cs;
      sincos_pd(_mm256_mul_pd(kk, proj), sn, cs);
      const __m256d cr = _mm256_set1_pd(t.coeff_re[l]);
      const __m256d ci = _mm256_set1_pd(t.coeff_im[l]);
      re = _mm256_fmadd_pd(cr, cs, _mm256_fmadd_pd(ci, sn, re));
      im = _mm256_fmadd_pd(ci, cs, _mm256_fnmadd_pd(cr, sn, im));
    }
    alignas(32) double rb[4], ib[4];
    _mm256_store_pd(rb, re);
    _mm256_store_pd(ib, im);
    for (int j = 0; j < 4; ++j) out[n + static_cast<std::size_t>(j)] = {rb[j], ib[j]};
  }
  if (n < out.size()) {
    const Positions tail{q.x.subspan(n), q.y.subspan(n), q.z.subspan(n)};
    scalar_kernels().field_sum(t, wavenumber, tail, out.subspan(n));
  }
}

CosineSum cosine_sum_avx2(const CosineTerms& t, double wavenumber, const double q[3]) {
  const std::size_t terms = t.dx.size();
  const __m256d kq0 = _mm256_set1_pd(wavenumber * q[0]);
  const __m256d kq1 = _mm256_set1_pd(wavenumber * q[1]);
  const __m256d kq2 = _mm256_set1_pd(wavenumber * q[2]);
  __m256d value = _mm256_setzero_pd(), gx = _mm256_setzero_pd(), gy = _mm256_setzero_pd(),
          gz = _mm256_setzero_pd();
  std::size_t l = 0;
  for (; l + 4 <= terms; l += 4) {
    const __m256d dx = _mm256_loadu_pd(t.dx.data() + l);
    const __m256d dy = _mm256_loadu_pd(t.dy.data() + l);
    const __m256d dz = _mm256_loadu_pd(t.dz.data() + l);
    __m256d arg = _mm256_mul_pd(dx, kq0);
    arg = _mm256_fmadd_pd(dy, kq1, arg);
    arg = _mm256_fmadd_pd(dz, kq2, arg);
    arg = _mm256_sub_pd(arg, _mm256_loadu_pd(t.phase.data() + l));
    __m256d sn, cs;
    sincos_pd(arg, sn, cs);
    const __m256d a = _mm256_loadu_pd(t.amplitude.data() + l);
    value = _mm256_fmadd_pd(a, cs, value);
    const __m256d as = _mm256_mul_pd(a, sn);
    gx = _mm256_fmadd_pd(as, dx, gx);
    gy = _mm256_fmadd_pd(as, dy, gy);
    gz = _mm256_fmadd_pd(as, dz, gz);
  }
  double v = hsum(value), sx = hsum(gx), sy = hsum(gy), sz = hsum(gz);
  for (; l < terms; ++l) {
    const double arg = wavenumber * (t.dx[l] * q[0] + t.dy[l] * q[1] + t.dz[l] * q[2]) - t.phase[l];
    const double a = t.amplitude[l];
    v += a * std::cos(arg);
    const double as = a * std::sin(arg);
    sx += as * t.dx[l];
    sy += as * t.dy[l];
    sz += as * t.dz[l];
  }
  CosineSum r;
  r.value = 2.0 * v;
  r.gradient[0] = -2.0 * wavenumber * sx;
  r.gradient[1] = -2.0 * wavenumber * sy;
  r.gradient[2] = -2.0 * wavenumber * sz;
  return r;
}

constexpr KernelTable kAvx2{"avx2", &sincos_avx2, &field_sum_avx2, &cosine_sum_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace sixdma::kernels
