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

#include <cmath>
#include <numbers>

#include "retrodict/kernels/wigner_kernels.hpp"

namespace retrodict::kernels::scalar {

namespace {
constexpr double kHalfInvPi = 0.5 / std::numbers::pi;
}

void fock_wigner(const PackedHermitian& packed, const double* x, const double* p,
                 double* w, std::size_t count) {
  const int dim = packed.dim;
  for (std::size_t i = 0; i < count; ++i) {
    const double gx = std::sqrt(2.0) * x[i];
    const double gy = std::sqrt(2.0) * p[i];
    const double z = gx * gx + gy * gy;
    double pow_re = 1.0;  // gamma^k
    double pow_im = 0.0;
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double* cre = packed.re.data() + packed.offset(k);
      const double* cim = packed.im.data() + packed.offset(k);
      const int len = dim - k;
      // generalized Laguerre recurrence in m at fixed k
      double lm1 = 0.0;
      double lm = 1.0;
      double sre = 0.0;
      double sim = 0.0;
      for (int m = 0; m < len; ++m) {
        sre += cre[m] * lm;
        sim += cim[m] * lm;
        const double lnext = ((2.0 * m + k + 1.0 - z) * lm - (m + k) * lm1) / (m + 1.0);
        lm1 = lm;
        lm = lnext;
      }
      acc += pow_re * sre - pow_im * sim;
      const double next_re = pow_re * gx - pow_im * gy;
      pow_im = pow_re * gy + pow_im * gx;
      pow_re = next_re;
    }
    w[i] = std::exp(-0.5 * z) * acc;
  }
}

void apd_on_series(double eta, double nu, int terms, const double* x, const double* p,
                   double* w, std::size_t count) {
  const double t = eta - 1.0;
  const double pref = std::exp(-nu) / std::numbers::pi;
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 2.0 * (x[i] * x[i] + p[i] * p[i]);
    double lm1 = 0.0;
    double lm = 1.0;
    double pw = 1.0;  // (eta-1)^m
    double s = 0.0;
    for (int m = 0; m < terms; ++m) {
      s += pw * lm;
      pw *= t;
      const double lnext = ((2.0 * m + 1.0 - z) * lm - m * lm1) / (m + 1.0);
      lm1 = lm;
      lm = lnext;
    }
    w[i] = kHalfInvPi - pref * std::exp(-0.5 * z) * s;
  }
}

}  // namespace retrodict::kernels::scalar
