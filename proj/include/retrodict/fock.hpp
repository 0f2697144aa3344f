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

#ifndef RETRODICT_FOCK_HPP
#define RETRODICT_FOCK_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "retrodict/errors.hpp"

namespace retrodict {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncated single-mode Fock space |0>..|D-1> with the numeric tolerance
/// used for Hermiticity/positivity checks on operators living in it.
struct FockSpace {
  int dim;
  double tol;

  explicit FockSpace(int dim_, double tol_ = 1e-9);

  friend bool operator==(const FockSpace& a, const FockSpace& b) {
    return a.dim == b.dim && a.tol == b.tol;
  }
};

inline constexpr int kDefaultDim = 32;
inline constexpr int kDefaultBipartiteDim = 16;

/// Dense complex operator on a truncated Fock space. Plain value type:
/// states, POVM elements and proposition operators are all carried by it.
class FockOperator {
public:
  FockOperator(FockSpace space, Matrix entries);

  const FockSpace& space() const { return space_; }
  int dim() const { return space_.dim; }
  const Matrix& matrix() const { return entries_; }
  Matrix& matrix() { return entries_; }

  Complex trace() const { return entries_.trace(); }

  /// Max entrywise |A - A^dagger|.
  double hermiticity_error() const;
  bool is_hermitian(double tol) const { return hermiticity_error() <= tol; }

  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

  /// Real eigenvalues of the Hermitian part, ascending.
  Eigen::VectorXd eigenvalues() const;

  static FockOperator zero(const FockSpace& space);
  static FockOperator identity(const FockSpace& space);

private:
  FockSpace space_;
  Matrix entries_;
};

FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(double s, const FockOperator& a);

/// Density operator: Hermitian, unit trace and positive within the space
/// tolerance. Construction validates all three.
class QuantumState {
public:
  static QuantumState from_operator(FockOperator op);

  /// Skips validation; for callers that construct entries that are valid
  /// by algebra (diagonal geometric laws, normalized pure states).
  static QuantumState trusted(FockOperator op);

  const FockOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const FockSpace& space() const { return op_.space(); }
  int dim() const { return op_.dim(); }

private:
  explicit QuantumState(FockOperator op) : op_(std::move(op)) {}
  FockOperator op_;
};

/// Labeled POVM. `completeness_tol` is declared per construction: exact for
/// APD/PNRD, quadrature-limited for binned homodyne.
struct Povm {
  FockSpace space;
  std::vector<std::pair<std::string, FockOperator>> elements;
  double completeness_tol = 1e-12;

  /// Max entrywise |sum_n Pi_n - 1|.
  double completeness_residual() const;

  /// Throws std::invalid_argument if any element fails Hermiticity or
  /// positivity within space.tol, or completeness fails its own tol.
  void validate() const;

  const FockOperator& element(const std::string& label) const;
};

// --- operations -----------------------------------------------------------

/// Annihilation operator: a[n-1,n] = sqrt(n).
FockOperator ladder(const FockSpace& space);

/// Fock-basis amplitudes of |alpha> before truncation renormalization.
Vector coherent_amplitudes(Complex alpha, const FockSpace& space);

/// Weight of |alpha> beyond the cutoff, sum_{n>=D} |c_n|^2.
double coherent_truncation_weight(Complex alpha, int dim);

/// Truncated, renormalized coherent state. Prints a one-line warning to
/// stderr when the truncated weight exceeds 1e-6.
QuantumState coherent_state(Complex alpha, const FockSpace& space);

QuantumState fock_state(int n, const FockSpace& space);
QuantumState maximally_mixed(const FockSpace& space);

/// Truncated thermal state with mean photon number nbar, renormalized.
QuantumState thermal_state(double nbar, const FockSpace& space);

/// Tr(rho^2).
double purity(const QuantumState& state);

/// <target| rho |target> for a normalized pure target.
double fidelity_pure(const QuantumState& state, const Vector& target);

/// Upper-triangular sigma with rho = sigma^dagger sigma. Throws
/// SingularMixture when the smallest eigenvalue is <= space.tol.
FockOperator cholesky_factor(const QuantumState& state);

/// -sum_i lambda_i ln lambda_i in nats, with 0 ln 0 := 0.
double von_neumann_entropy(const QuantumState& state);

}  // namespace retrodict

#endif  // RETRODICT_FOCK_HPP
