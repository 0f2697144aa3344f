/*
Copyright (c) 2026 the retrodict developers.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#if defined(RETRODICT_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "retrodict/kernels/wigner_kernels.hpp"

namespace retrodict::kernels::avx2 {

namespace {

constexpr double kHalfInvPi = 0.5 / std::numbers::pi;

// exp() has no AVX2 instruction; the per-point e^{-z/2} factor is applied
// in a scalar epilogue after the vectorized recurrences.
inline void store_exp_scale(__m256d acc, __m256d z, double* out) {
  alignas(32) double a[4];
  alignas(32) double zz[4];
  _mm256_store_pd(a, acc);
  _mm256_store_pd(zz, z);
  for (int l = 0; l < 4; ++l) out[l] = std::exp(-0.5 * zz[l]) * a[l];
}

}  // namespace

void fock_wigner(const PackedHermitian& packed, const double* x, const double* p,
                 double* w, std::size_t count) {
  const int dim = packed.dim;
  const __m256d sqrt2 = _mm256_set1_pd(std::numbers::sqrt2);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d gx = _mm256_mul_pd(sqrt2, _mm256_loadu_pd(x + i));
    const __m256d gy = _mm256_mul_pd(sqrt2, _mm256_loadu_pd(p + i));
    const __m256d z = _mm256_fmadd_pd(gx, gx, _mm256_mul_pd(gy, gy));
    __m256d pow_re = _mm256_set1_pd(1.0);
    __m256d pow_im = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < dim; ++k) {
      const double* cre = packed.re.data() + packed.offset(k);
      const double* cim = packed.im.data() + packed.offset(k);
      const int len = dim - k;
      __m256d lm1 = _mm256_setzero_pd();
      __m256d lm = _mm256_set1_pd(1.0);
      __m256d sre = _mm256_setzero_pd();
      __m256d sim = _mm256_setzero_pd();
      for (int m = 0; m < len; ++m) {
        sre = _mm256_fmadd_pd(_mm256_set1_pd(cre[m]), lm, sre);
        sim = _mm256_fmadd_pd(_mm256_set1_pd(cim[m]), lm, sim);
        const __m256d a = _mm256_sub_pd(_mm256_set1_pd(2.0 * m + k + 1.0), z);
        const __m256d num =
            _mm256_fmsub_pd(a, lm, _mm256_mul_pd(_mm256_set1_pd(double(m + k)), lm1));
        lm1 = lm;
        lm = _mm256_mul_pd(num, _mm256_set1_pd(1.0 / (m + 1.0)));
      }
      acc = _mm256_fmadd_pd(pow_re, sre, acc);
      acc = _mm256_fnmadd_pd(pow_im, sim, acc);
      const __m256d next_re = _mm256_fmsub_pd(pow_re, gx, _mm256_mul_pd(pow_im, gy));
      pow_im = _mm256_fmadd_pd(pow_re, gy, _mm256_mul_pd(pow_im, gx));
      pow_re = next_re;
    }
    store_exp_scale(acc, z, w + i);
  }
  if (i < count) {
    scalar::fock_wigner(packed, x + i, p + i, w + i, count - i);
  }
}

void apd_on_series(double eta, double nu, int terms, const double* x, const double* p,
                   double* w, std::size_t count) {
  const double pref = std::exp(-nu) / std::numbers::pi;
  const __m256d t = _mm256_set1_pd(eta - 1.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d xs = _mm256_loadu_pd(x + i);
    const __m256d ps = _mm256_loadu_pd(p + i);
    const __m256d z = _mm256_mul_pd(_mm256_set1_pd(2.0),
                                    _mm256_fmadd_pd(xs, xs, _mm256_mul_pd(ps, ps)));
    __m256d lm1 = _mm256_setzero_pd();
    __m256d lm = _mm256_set1_pd(1.0);
    __m256d pw = _mm256_set1_pd(1.0);
    __m256d s = _mm256_setzero_pd();
    for (int m = 0; m < terms; ++m) {
      s = _mm256_fmadd_pd(pw, lm, s);
      pw = _mm256_mul_pd(pw, t);
      const __m256d a = _mm256_sub_pd(_mm256_set1_pd(2.0 * m + 1.0), z);
      const __m256d num =
          _mm256_fmsub_pd(a, lm, _mm256_mul_pd(_mm256_set1_pd(double(m)), lm1));
      lm1 = lm;
      lm = _mm256_mul_pd(num, _mm256_set1_pd(1.0 / (m + 1.0)));
    }
    alignas(32) double ss[4];
    alignas(32) double zz[4];
    _mm256_store_pd(ss, s);
    _mm256_store_pd(zz, z);
    for (int l = 0; l < 4; ++l) {
      w[i + l] = kHalfInvPi - pref * std::exp(-0.5 * zz[l]) * ss[l];
    }
  }
  if (i < count) {
    scalar::apd_on_series(eta, nu, terms, x + i, p + i, w + i, count - i);
  }
}

}  // namespace retrodict::kernels::avx2

#endif  // RETRODICT_HAVE_AVX2
