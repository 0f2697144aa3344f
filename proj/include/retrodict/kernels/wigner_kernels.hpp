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

#ifndef RETRODICT_KERNELS_WIGNER_KERNELS_HPP
#define RETRODICT_KERNELS_WIGNER_KERNELS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace retrodict::kernels {

// Phase-space evaluation is the data-parallel hot loop of this library:
// identical recurrences run per grid point with no cross-point coupling.
// Each kernel ships a scalar reference implementation and an AVX2 variant
// processing four points per lane; the active backend is chosen at runtime
// from CPUID and can be forced for equivalence testing.

/// Hermitian operator packed for the Fock-Wigner evaluation. For each
/// superdiagonal k the coefficients fold together op[m, m+k], the
/// alternating parity sign, the sqrt(m!/(m+k)!) ladder normalization, the
/// 1/pi convention factor and the 2x weight of the off-diagonal pairs:
///
///   W(x,p) = e^{-z/2} sum_k Re( gamma^k sum_m c[k][m] L_m^{(k)}(z) ),
///   gamma = sqrt(2)(x + i p),  z = |gamma|^2.
struct PackedHermitian {
  int dim = 0;
  // diag-major layout: offset(k) = k*dim - k*(k-1)/2, m in [0, dim-k)
  std::vector<double> re;
  std::vector<double> im;

  std::size_t offset(int k) const {
    return static_cast<std::size_t>(k) * dim - static_cast<std::size_t>(k) * (k - 1) / 2;
  }
};

/// Packs a Hermitian matrix (upper triangle is read) for fock_wigner_eval.
PackedHermitian pack_hermitian(const Eigen::MatrixXcd& op);

enum class Backend { scalar, avx2 };

/// Backend selected at startup (CPUID; RETRODICT_KERNELS=scalar overrides).
Backend active_backend();
bool backend_supported(Backend backend);
/// Throws std::invalid_argument when the backend is unsupported here.
void force_backend(Backend backend);
std::string backend_name(Backend backend);

/// W at `count` phase-space points for a packed Hermitian operator.
void fock_wigner_eval(const PackedHermitian& packed, const double* x, const double* p,
                      double* w, std::size_t count);

/// Partial sums of the alternating Laguerre series for the APD 'on' Wigner
/// function: w[i] = 1/(2 pi) - (e^{-nu}/pi) e^{-z/2} sum_{m<terms} (eta-1)^m
/// L_m(z) with z = 2(x^2+p^2).
void apd_on_series_eval(double eta, double nu, int terms, const double* x,
                        const double* p, double* w, std::size_t count);

namespace scalar {
void fock_wigner(const PackedHermitian& packed, const double* x, const double* p,
                 double* w, std::size_t count);
void apd_on_series(double eta, double nu, int terms, const double* x, const double* p,
                   double* w, std::size_t count);
}  // namespace scalar

#if defined(RETRODICT_HAVE_AVX2)
namespace avx2 {
void fock_wigner(const PackedHermitian& packed, const double* x, const double* p,
                 double* w, std::size_t count);
void apd_on_series(double eta, double nu, int terms, const double* x, const double* p,
                   double* w, std::size_t count);
}  // namespace avx2
#endif

}  // namespace retrodict::kernels

#endif  // RETRODICT_KERNELS_WIGNER_KERNELS_HPP
