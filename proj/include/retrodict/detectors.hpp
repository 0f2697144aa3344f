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

#ifndef RETRODICT_DETECTORS_HPP
#define RETRODICT_DETECTORS_HPP

#include "retrodict/fock.hpp"

namespace retrodict {

/// Avalanche photodiode: detection efficiency eta and mean dark counts nu.
struct ApdParams {
  double eta;
  double nu;

  ApdParams(double eta_, double nu_);
};

/// Inefficient homodyne detection of the quadrature x_phi with recorded
/// value x_i. Convention: x_phi = (a e^{-i phi} + a^dagger e^{i phi})/sqrt(2),
/// vacuum variance 1/2. eta = 1 makes the Gaussian kernel singular and is
/// rejected at construction.
struct HomodyneParams {
  double eta;
  double phi;
  double x_i;

  HomodyneParams(double eta_, double phi_, double x_i_);
};

/// Discretization of the continuous homodyne outcome into bins of width dx
/// on [-x_max, x_max], plus two overflow bins restoring completeness.
struct HomodyneBinning {
  double dx = 0.25;
  double x_max = 5.0;
};

/// Two-outcome POVM {off, on}: Pi_off diagonal e^{-nu} (1-eta)^n,
/// Pi_on = 1 - Pi_off. Completeness is exact by construction.
Povm apd_povm(const ApdParams& params, const FockSpace& space);

/// Pr(on | n) = 1 - e^{-nu} (1-eta)^n, evaluated with the same expression
/// tree as the apd_povm diagonal so the two agree bit for bit.
double apd_on_prob(int n, const ApdParams& params);

/// Ideal photon-number-resolving detector: projectors |n><n|, labels
/// "0".."D-1".
Povm pnrd_povm(const FockSpace& space);

/// Single POVM element of inefficient homodyne detection at recorded value
/// params.x_i, via Gauss-Hermite quadrature. Throws QuadratureUnderresolved
/// when the (D-1,D-1) element fails to stabilize below 1e-9 under node
/// doubling.
FockOperator hd_povm_element(const HomodyneParams& params, const FockSpace& space);

/// Binned homodyne POVM. Interior labels carry the bin center; overflow
/// bins are labeled "lo" and "hi". Completeness holds to quadrature
/// precision because the bin kernels sum to one pointwise.
Povm hd_binned_povm(double eta, double phi, const HomodyneBinning& binning,
                    const FockSpace& space);

/// Born rule Tr(rho Pi), clipped to [0,1] only within space.tol.
double predictive_prob(const QuantumState& state, const FockOperator& element);

/// Gauss-Hermite rule for weight e^{-x^2}: nodes and weights via the
/// Golub-Welsch tridiagonal eigenproblem.
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussHermiteRule gauss_hermite(int n);

/// Normalized Hermite values h_n(y) = H_n(y)/sqrt(2^n n!) for n < count.
Eigen::VectorXd hermite_normalized(int count, double y);

}  // namespace retrodict

#endif  // RETRODICT_DETECTORS_HPP
