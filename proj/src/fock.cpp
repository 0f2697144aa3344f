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

#include "retrodict/fock.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>

namespace retrodict {

FockSpace::FockSpace(int dim_, double tol_) : dim(dim_), tol(tol_) {
  if (dim < 2) {
    throw std::invalid_argument("FockSpace: dim must be >= 2");
  }
  if (!(tol > 0.0 && tol < 1e-6)) {
    throw std::invalid_argument("FockSpace: tol must lie in (0, 1e-6)");
  }
}

FockOperator::FockOperator(FockSpace space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim || entries_.cols() != space_.dim) {
    throw std::invalid_argument("FockOperator: matrix shape does not match dim");
  }
}

double FockOperator::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd FockOperator::eigenvalues() const {
  Matrix h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double FockOperator::min_eigenvalue() const { return eigenvalues().minCoeff(); }

FockOperator FockOperator::zero(const FockSpace& space) {
  return FockOperator(space, Matrix::Zero(space.dim, space.dim));
}

FockOperator FockOperator::identity(const FockSpace& space) {
  return FockOperator(space, Matrix::Identity(space.dim, space.dim));
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  return FockOperator(a.space(), a.matrix() + b.matrix());
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  return FockOperator(a.space(), a.matrix() - b.matrix());
}

FockOperator operator*(double s, const FockOperator& a) {
  return FockOperator(a.space(), s * a.matrix());
}

QuantumState QuantumState::from_operator(FockOperator op) {
  const double tol = op.space().tol;
  if (op.hermiticity_error() > tol) {
    throw std::invalid_argument("QuantumState: operator is not Hermitian within tol");
  }
  if (std::abs(op.trace() - Complex(1.0, 0.0)) > tol) {
    throw std::invalid_argument("QuantumState: trace differs from 1 beyond tol");
  }
  if (op.min_eigenvalue() < -tol) {
    throw std::invalid_argument("QuantumState: operator has eigenvalue below -tol");
  }
  return QuantumState(std::move(op));
}

QuantumState QuantumState::trusted(FockOperator op) { return QuantumState(std::move(op)); }

double Povm::completeness_residual() const {
  Matrix s = Matrix::Zero(space.dim, space.dim);
  for (const auto& [label, op] : elements) {
    s += op.matrix();
  }
  return (s - Matrix::Identity(space.dim, space.dim)).cwiseAbs().maxCoeff();
}

void Povm::validate() const {
  for (const auto& [label, op] : elements) {
    if (op.hermiticity_error() > space.tol) {
      throw std::invalid_argument("Povm element '" + label + "' not Hermitian within tol");
    }
    if (op.min_eigenvalue() < -space.tol) {
      throw std::invalid_argument("Povm element '" + label + "' not positive within tol");
    }
  }
  if (completeness_residual() > completeness_tol) {
    std::ostringstream msg;
    msg << "Povm completeness residual " << completeness_residual()
        << " exceeds declared tol " << completeness_tol;
    throw std::invalid_argument(msg.str());
  }
}

const FockOperator& Povm::element(const std::string& label) const {
  for (const auto& [l, op] : elements) {
    if (l == label) return op;
  }
  throw std::invalid_argument("Povm: no element labeled '" + label + "'");
}

FockOperator ladder(const FockSpace& space) {
  Matrix a = Matrix::Zero(space.dim, space.dim);
  for (int n = 1; n < space.dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return FockOperator(space, std::move(a));
}

Vector coherent_amplitudes(Complex alpha, const FockSpace& space) {
  Vector c(space.dim);
  c(0) = 1.0;
  for (int n = 1; n < space.dim; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return std::exp(-0.5 * std::norm(alpha)) * c;
}

double coherent_truncation_weight(Complex alpha, int dim) {
  // 1 - e^{-|a|^2} sum_{n<D} |a|^{2n}/n!, summed in the stable direction.
  const double mu = std::norm(alpha);
  double term = std::exp(-mu);
  double cdf = term;
  for (int n = 1; n < dim; ++n) {
    term *= mu / n;
    cdf += term;
  }
  return std::max(0.0, 1.0 - cdf);
}

QuantumState coherent_state(Complex alpha, const FockSpace& space) {
  const double leak = coherent_truncation_weight(alpha, space.dim);
  if (leak > 1e-6) {
    static std::atomic<int> warn_count{0};
    const int seen = warn_count.fetch_add(1);
    if (seen < 3) {
      std::cerr << "retrodict: warning: coherent state |alpha|=" << std::abs(alpha)
                << " leaks " << leak << " past dim " << space.dim << "\n";
    } else if (seen == 3) {
      std::cerr << "retrodict: further truncation warnings suppressed\n";
    }
  }
  Vector c = coherent_amplitudes(alpha, space);
  c.normalize();
  return QuantumState::trusted(FockOperator(space, c * c.adjoint()));
}

QuantumState fock_state(int n, const FockSpace& space) {
  if (n < 0 || n >= space.dim) {
    throw std::invalid_argument("fock_state: n out of range");
  }
  Matrix m = Matrix::Zero(space.dim, space.dim);
  m(n, n) = 1.0;
  return QuantumState::trusted(FockOperator(space, std::move(m)));
}

QuantumState maximally_mixed(const FockSpace& space) {
  Matrix m = Matrix::Identity(space.dim, space.dim) / static_cast<double>(space.dim);
  return QuantumState::trusted(FockOperator(space, std::move(m)));
}

QuantumState thermal_state(double nbar, const FockSpace& space) {
  if (nbar < 0.0) {
    throw std::invalid_argument("thermal_state: nbar must be >= 0");
  }
  Matrix m = Matrix::Zero(space.dim, space.dim);
  if (nbar == 0.0) {
    m(0, 0) = 1.0;
  } else {
    const double r = nbar / (nbar + 1.0);
    double w = 1.0;
    double total = 0.0;
    for (int n = 0; n < space.dim; ++n) {
      m(n, n) = w;
      total += w;
      w *= r;
    }
    m /= total;
  }
  return QuantumState::trusted(FockOperator(space, std::move(m)));
}

double purity(const QuantumState& state) {
  const Matrix& r = state.matrix();
  return (r * r).trace().real();
}

double fidelity_pure(const QuantumState& state, const Vector& target) {
  if (target.size() != state.dim()) {
    throw std::invalid_argument("fidelity_pure: target dimension mismatch");
  }
  return (target.adjoint() * state.matrix() * target)(0, 0).real();
}

FockOperator cholesky_factor(const QuantumState& state) {
  const FockSpace& space = state.space();
  const double lo = state.op().min_eigenvalue();
  if (lo <= space.tol) {
    std::ostringstream msg;
    msg << "cholesky_factor: smallest eigenvalue " << lo << " <= tol " << space.tol;
    throw SingularMixture(msg.str());
  }
  // LLT gives rho = L L^dagger with L lower; sigma = L^dagger is the upper
  // factor with rho = sigma^dagger sigma.
  Eigen::LLT<Matrix> llt(state.matrix());
  if (llt.info() != Eigen::Success) {
    throw SingularMixture("cholesky_factor: LLT failed");
  }
  Matrix sigma = Matrix(llt.matrixL()).adjoint();
  return FockOperator(space, std::move(sigma));
}

double von_neumann_entropy(const QuantumState& state) {
  Eigen::VectorXd ev = state.op().eigenvalues();
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const double l = ev(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

}  // namespace retrodict
