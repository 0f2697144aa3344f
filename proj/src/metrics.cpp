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

#include "retrodict/metrics.hpp"

#include <cmath>
#include <numbers>

#include "retrodict/retrodiction.hpp"

namespace retrodict {

double projectivity(const FockOperator& element) {
  return purity(premeasurement_state(element));
}

std::optional<double> effective_efficiency(const FockOperator& element) {
  if (projectivity(element) < 1.0 - 1e-6) {
    return std::nullopt;
  }
  return element.trace().real();
}

double fidelity_off(int n, double eta) {
  if (n < 0) throw std::invalid_argument("fidelity_off: n must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("fidelity_off: eta must lie in [0,1]");
  }
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= 1.0 - eta;
  return eta * r;
}

double fidelity_on_profile(int n, const ApdParams& params) {
  return apd_on_prob(n, params);
}

GaussianMoments gaussian_moments(const QuantumState& state) {
  const Matrix a = ladder(state.space()).matrix();
  const Matrix& rho = state.matrix();
  const Complex mean_a = (rho * a).trace();
  const Complex mean_aa = (rho * a * a).trace();
  const double mean_n = (rho * a.adjoint() * a).trace().real();

  // x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)):
  //   <x^2> = Re<a^2> + <n> + 1/2,  <p^2> = -Re<a^2> + <n> + 1/2,
  //   <{x,p}/2> = Im<a^2>
  GaussianMoments m;
  m.mean << std::numbers::sqrt2 * mean_a.real(), std::numbers::sqrt2 * mean_a.imag();
  const double xx = mean_aa.real() + mean_n + 0.5 - m.mean(0) * m.mean(0);
  const double pp = -mean_aa.real() + mean_n + 0.5 - m.mean(1) * m.mean(1);
  const double xp = mean_aa.imag() - m.mean(0) * m.mean(1);
  m.cov << xx, xp, xp, pp;
  return m;
}

double gaussian_entropy(double symplectic_eigenvalue) {
  const double v = symplectic_eigenvalue;
  if (v < 0.5) {
    // numerical round-off below the vacuum floor
    return 0.0;
  }
  const double hi = (v + 0.5) * std::log(v + 0.5);
  const double lo = (v - 0.5) > 0.0 ? (v - 0.5) * std::log(v - 0.5) : 0.0;
  return hi - lo;
}

double non_gaussianity(const QuantumState& state) {
  const GaussianMoments m = gaussian_moments(state);
  const double det = m.cov.determinant();
  const double nu = std::sqrt(std::max(det, 0.25));
  return gaussian_entropy(nu) - von_neumann_entropy(state);
}

double uhlmann_fidelity(const QuantumState& a, const QuantumState& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  Matrix sqrt_a = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
                  es.eigenvectors().adjoint();
  Matrix inner = sqrt_a * b.matrix() * sqrt_a;
  Eigen::SelfAdjointEigenSolver<Matrix> es2(inner);
  double f = 0.0;
  for (int i = 0; i < es2.eigenvalues().size(); ++i) {
    const double l = es2.eigenvalues()(i);
    if (l > 0.0) f += std::sqrt(l);
  }
  return f * f;
}

MetricReport metric_report(const FockOperator& element, int fock_max) {
  const QuantumState retro = premeasurement_state(element);
  MetricReport report;
  report.projectivity = purity(retro);
  report.effective_efficiency =
      report.projectivity >= 1.0 - 1e-6
          ? std::optional<double>(element.trace().real())
          : std::nullopt;
  for (int n = 0; n <= fock_max && n < element.dim(); ++n) {
    Vector target = Vector::Zero(element.dim());
    target(n) = 1.0;
    report.fidelities[n] = fidelity_pure(retro, target);
  }
  report.non_gaussianity = non_gaussianity(retro);
  // parity form of W(0,0)
  double w0 = 0.0;
  double sign = 1.0;
  for (int n = 0; n < retro.dim(); ++n) {
    w0 += sign * retro.matrix()(n, n).real();
    sign = -sign;
  }
  report.negativity_origin = w0 / std::numbers::pi;
  return report;
}

}  // namespace retrodict
