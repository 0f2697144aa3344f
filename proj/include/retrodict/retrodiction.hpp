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

#ifndef RETRODICT_RETRODICTION_HPP
#define RETRODICT_RETRODICTION_HPP

#include <utility>
#include <vector>

#include "retrodict/detectors.hpp"
#include "retrodict/fock.hpp"

namespace retrodict {

inline constexpr double kTraceFloor = 1e-12;

/// Coherent probe set: amplitudes alpha_m with preparation probabilities.
struct ProbeEntry {
  Complex alpha;
  double prob;
};

struct ProbeEnsemble {
  FockSpace space;
  std::vector<ProbeEntry> entries;

  /// Throws std::invalid_argument unless probs are >= 0 and sum to 1
  /// within 1e-12.
  void validate() const;
};

/// General preparation ensemble; carries explicit states so synthetic
/// (non-coherent) probe sets can be expressed in tests and pipelines.
struct StateEnsemble {
  FockSpace space;
  std::vector<std::pair<QuantumState, double>> entries;
};

StateEnsemble materialize(const ProbeEnsemble& ensemble);

/// Probe amplitudes on rings |alpha| in linspace(0, amp_max, amp_steps),
/// each ring carrying `phases` equally spaced phases, uniform weights.
ProbeEnsemble ring_probes(double amp_max, int amp_steps, int phases,
                          const FockSpace& space);

struct PropositionSet {
  enum class Kind { theta, lambda };
  FockSpace space;
  Kind kind;
  std::vector<FockOperator> ops;

  /// Max entrywise |sum_m op_m - 1|.
  double completeness_residual() const;
};

/// rho_retr = Pi / Tr(Pi). Throws ZeroTraceElement when Tr(Pi) is at or
/// below the floor.
QuantumState premeasurement_state(const FockOperator& element,
                                  double trace_floor = kTraceFloor);

/// Pre-measurement state of the APD 'off' response: diagonal
/// eta (1-eta)^n renormalized over the truncation. The dark-count factor
/// e^{-nu} cancels in the normalization and is dropped analytically, so
/// the result is bit-identical across nu.
QuantumState apd_off_premeasurement(const ApdParams& params, const FockSpace& space);

/// Asymptotic pre-measurement state of the APD 'on' response: diagonal
/// proportional to 1 - e^{-nu}(1-eta)^n, normalized over n < D.
QuantumState premeasurement_on_asymptotic(const ApdParams& params,
                                          const FockSpace& space);

QuantumState unread_mixture(const StateEnsemble& ensemble);
QuantumState unread_mixture(const ProbeEnsemble& ensemble);

/// Theta_m = D p_m rho_m. Requires the unread mixture to equal 1/D within
/// theta_tol; throws NotMaximallyMixed otherwise.
PropositionSet proposition_set_theta(const StateEnsemble& ensemble,
                                     double theta_tol = 1e-8);

/// Tr(rho_retr Theta_m).
double retrodictive_prob(const FockOperator& element, const FockOperator& proposition);

/// Bayes inversion: Pr(m|n) = Pr(n|m) Pr(m) / sum_m' Pr(n|m') Pr(m').
/// `predictive` is M x N (rows per preparation); the result has the same
/// shape with unit column sums. Throws UnreachableOutcome on a zero
/// denominator.
Eigen::MatrixXd bayes_retrodict(const Eigen::MatrixXd& predictive,
                                const Eigen::VectorXd& priors);

/// State on A (x) B with the row-major tensor index i_A * D_B + i_B.
struct BipartiteState {
  QuantumState state;
  int dim_a;
  int dim_b;
};

/// Two-mode squeezed vacuum sqrt(1-lambda^2) sum lambda^n |n,n>. Throws
/// TruncationLeakage when lambda^{2D} >= 1e-9.
BipartiteState tmsv(double lambda, const FockSpace& per_mode);

QuantumState partial_trace_b(const BipartiteState& resource);

/// Heralds on outcome Pi applied to mode B: returns the conditioned state
/// of A and the success probability. Throws ZeroSuccessProbability.
std::pair<QuantumState, double> conditioned_state(const BipartiteState& resource,
                                                  const FockOperator& element_b,
                                                  double trace_floor = kTraceFloor);

}  // namespace retrodict

#endif  // RETRODICT_RETRODICTION_HPP
