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

#ifndef RETRODICT_TOMOGRAPHY_HPP
#define RETRODICT_TOMOGRAPHY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "retrodict/retrodiction.hpp"

namespace retrodict {

/// Response frequencies per probe. Simulated tables carry integer counts
/// whose rows sum to shots_per_probe; synthetic exact-frequency tables are
/// real-valued with the same row-sum contract.
struct CountTable {
  ProbeEnsemble probes;
  std::vector<std::string> labels;
  Eigen::MatrixXd counts;  // M x N
  std::int64_t shots_per_probe;
  std::uint64_t seed;

  void validate() const;
};

/// Multinomial sampling of Born-rule probabilities, deterministic in
/// (inputs, seed) across platforms: the generator is mt19937_64 and the
/// uniform doubles are derived by explicit bit manipulation.
CountTable simulate_counts(const ProbeEnsemble& ensemble, const Povm& povm,
                           std::int64_t shots, std::uint64_t seed);

/// Counts proportional to the exact Born probabilities (real-valued).
CountTable exact_frequency_table(const ProbeEnsemble& ensemble, const Povm& povm,
                                 std::int64_t shots);

struct MaxlikOptions {
  int max_iters = 5000;
  double ll_tol = 1e-10;
  bool diagonal_constraint = false;
  std::optional<Povm> initial;
};

struct ReconstructionReport {
  Povm povm;
  int iterations = 0;
  double final_log_likelihood = 0.0;
  double completeness_residual = 0.0;
  std::string stop_reason;  // "tol" | "max_iters"
  std::vector<double> ll_history;
  std::vector<std::string> notes;
};

/// Iterative MaxLik POVM reconstruction with the completeness-enforcing
/// update Pi_n <- lambda^{-1/2} R_n Pi_n R_n lambda^{-1/2},
/// R_n = sum_m (f_mn/p_mn) rho_m, lambda = sum_n R_n Pi_n R_n. Outcomes
/// never observed are frozen at the zero operator with a report note.
ReconstructionReport maxlik_povm(const CountTable& table, const MaxlikOptions& options);

/// Proposition operators from the Cholesky factor of the unread mixture:
/// Lambda_m = (sigma^-1)^dag p_m rho_m sigma^-1, completing to the identity
/// by construction. `mixture` overrides the design-ensemble mixture when a
/// reconstructed one should be used instead. Throws SingularMixture.
PropositionSet lambda_propositions(const StateEnsemble& ensemble,
                                   const std::optional<QuantumState>& mixture = std::nullopt);
PropositionSet lambda_propositions(const ProbeEnsemble& ensemble,
                                   const std::optional<QuantumState>& mixture = std::nullopt);

struct QstOptions {
  int max_iters = 5000;
  double ll_tol = 1e-10;
  bool diagonal_constraint = false;
  std::optional<QuantumState> mixture;
};

/// Pre-measurement state from a retrodicted probability column: inner
/// MaxLik state estimation against the Lambda_m set, then the sigma^-1
/// recovery map, renormalized. The estimation is well-posed only for an
/// informationally complete probe set; on ring ensembles that means at
/// least D nonzero amplitudes and at least 2D-1 phases, otherwise the
/// likelihood is flat along unprobed operator directions.
QuantumState qst_premeasurement(const Eigen::VectorXd& retro_probs,
                                const ProbeEnsemble& ensemble,
                                const QstOptions& options = {});
QuantumState qst_premeasurement(const Eigen::VectorXd& retro_probs,
                                const StateEnsemble& ensemble,
                                const QstOptions& options = {});

/// Retrodicted probabilities from QDT data at equal preparation rates:
/// Pr(m|n) = Pr(n|m) / sum_m' Pr(n|m'). Columns with no support throw
/// UnreachableOutcome.
Eigen::MatrixXd qdt_retrodict(const Eigen::MatrixXd& predictive);
Eigen::MatrixXd qdt_retrodict(const CountTable& table);

/// (1/2) ||a - b||_1 for Hermitian operators.
double trace_distance(const FockOperator& a, const FockOperator& b);

/// Clips negative eigenvalues to zero and renormalizes; the repair entry
/// point reconstruction is allowed to use (the core constructors reject
/// instead).
QuantumState repair_state(const FockOperator& op);

}  // namespace retrodict

#endif  // RETRODICT_TOMOGRAPHY_HPP
