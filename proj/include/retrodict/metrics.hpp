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

#ifndef RETRODICT_METRICS_HPP
#define RETRODICT_METRICS_HPP

#include <map>
#include <optional>
#include <string>

#include "retrodict/detectors.hpp"
#include "retrodict/fock.hpp"

namespace retrodict {

/// Purity of the pre-measurement state; 1 exactly for rank-1 elements.
double projectivity(const FockOperator& element);

/// Tr(Pi) when the element is projective (projectivity >= 1 - 1e-6);
/// absent otherwise. The efficiency reading only applies to rank-1
/// elements.
std::optional<double> effective_efficiency(const FockOperator& element);

/// Fidelity of the APD 'off' measurement with an ideal n-photon detection:
/// eta (1-eta)^n.
double fidelity_off(int n, double eta);

/// Truncation-free profile of the 'on' fidelity: Pr(on|n) =
/// 1 - e^{-nu}(1-eta)^n. The asymptotic fidelity itself is this divided by
/// the Hilbert-space dimension.
double fidelity_on_profile(int n, const ApdParams& params);

/// First and symmetrized second quadrature moments under the
/// variance-1/2 vacuum convention.
struct GaussianMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};
GaussianMoments gaussian_moments(const QuantumState& state);

/// g(nu) = (nu+1/2) ln(nu+1/2) - (nu-1/2) ln(nu-1/2): entropy of the
/// Gaussian state with symplectic eigenvalue nu (nats).
double gaussian_entropy(double symplectic_eigenvalue);

/// Relative entropy to the Gaussian reference with the same first and
/// second moments; reduces to S(rho_G) - S(rho).
double non_gaussianity(const QuantumState& state);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 for mixed states.
double uhlmann_fidelity(const QuantumState& a, const QuantumState& b);

/// Bundle emitted per detector response by the pipeline.
struct MetricReport {
  double projectivity;
  std::optional<double> effective_efficiency;
  std::map<int, double> fidelities;  // vs |n><n| targets
  double non_gaussianity;
  double negativity_origin;  // W(0,0) of the pre-measurement state
};

MetricReport metric_report(const FockOperator& element, int fock_max);

}  // namespace retrodict

#endif  // RETRODICT_METRICS_HPP
