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

#include "retrodict/kernels/wigner_kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace retrodict::kernels {

PackedHermitian pack_hermitian(const Eigen::MatrixXcd& op) {
  const int dim = static_cast<int>(op.rows());
  if (op.cols() != dim || dim < 1) {
    throw std::invalid_argument("pack_hermitian: operator must be square");
  }
  PackedHermitian packed;
  packed.dim = dim;
  const std::size_t total = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  packed.re.resize(total);
  packed.im.resize(total);
  const double inv_pi = 1.0 / std::numbers::pi;
  for (int k = 0; k < dim; ++k) {
    const double weight = (k == 0 ? 1.0 : 2.0) * inv_pi;
    // ladder(m) = sqrt(m!/(m+k)!), built incrementally
    double ladder = 1.0;
    for (int j = 1; j <= k; ++j) ladder /= std::sqrt(static_cast<double>(j));
    const std::size_t base = packed.offset(k);
    double sign = 1.0;
    for (int m = 0; m + k < dim; ++m) {
      const std::complex<double> c = op(m, m + k);
      packed.re[base + m] = weight * sign * ladder * c.real();
      packed.im[base + m] = weight * sign * ladder * c.imag();
      sign = -sign;
      ladder *= std::sqrt((m + 1.0) / (m + 1.0 + k));
    }
  }
  return packed;
}

namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("RETRODICT_KERNELS")) {
    if (std::string(env) == "scalar") return Backend::scalar;
  }
#if defined(RETRODICT_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Backend::avx2;
  }
#endif
  return Backend::scalar;
}

Backend g_backend = detect_backend();

}  // namespace

Backend active_backend() { return g_backend; }

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(RETRODICT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

void force_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw std::invalid_argument("force_backend: " + backend_name(backend) +
                                " is not supported on this host");
  }
  g_backend = backend;
}

std::string backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

void fock_wigner_eval(const PackedHermitian& packed, const double* x, const double* p,
                      double* w, std::size_t count) {
#if defined(RETRODICT_HAVE_AVX2)
  if (g_backend == Backend::avx2) {
    avx2::fock_wigner(packed, x, p, w, count);
    return;
  }
#endif
  scalar::fock_wigner(packed, x, p, w, count);
}

void apd_on_series_eval(double eta, double nu, int terms, const double* x,
                        const double* p, double* w, std::size_t count) {
#if defined(RETRODICT_HAVE_AVX2)
  if (g_backend == Backend::avx2) {
    avx2::apd_on_series(eta, nu, terms, x, p, w, count);
    return;
  }
#endif
  scalar::apd_on_series(eta, nu, terms, x, p, w, count);
}

}  // namespace retrodict::kernels
