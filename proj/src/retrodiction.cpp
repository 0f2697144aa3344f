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

#include "retrodict/retrodiction.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace retrodict {

void ProbeEnsemble::validate() const {
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.prob < 0.0) {
      throw std::invalid_argument("ProbeEnsemble: negative probability");
    }
    total += e.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ProbeEnsemble: probabilities must sum to 1 within 1e-12");
  }
}

StateEnsemble materialize(const ProbeEnsemble& ensemble) {
  ensemble.validate();
  StateEnsemble out{ensemble.space, {}};
  out.entries.reserve(ensemble.entries.size());
  for (const auto& e : ensemble.entries) {
    out.entries.emplace_back(coherent_state(e.alpha, ensemble.space), e.prob);
  }
  return out;
}

ProbeEnsemble ring_probes(double amp_max, int amp_steps, int phases,
                          const FockSpace& space) {
  if (amp_steps < 1 || phases < 1) {
    throw std::invalid_argument("ring_probes: amp_steps and phases must be >= 1");
  }
  ProbeEnsemble ens{space, {}};
  const double p = 1.0 / (static_cast<double>(amp_steps) * phases);
  for (int i = 0; i < amp_steps; ++i) {
    const double amp = amp_steps == 1 ? amp_max
                                      : amp_max * static_cast<double>(i) / (amp_steps - 1);
    for (int k = 0; k < phases; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / phases;
      ens.entries.push_back({std::polar(amp, theta), p});
    }
  }
  return ens;
}

double PropositionSet::completeness_residual() const {
  Matrix s = Matrix::Zero(space.dim, space.dim);
  for (const auto& op : ops) s += op.matrix();
  return (s - Matrix::Identity(space.dim, space.dim)).cwiseAbs().maxCoeff();
}

QuantumState premeasurement_state(const FockOperator& element, double trace_floor) {
  const double tr = element.trace().real();
  if (tr <= trace_floor) {
    std::ostringstream msg;
    msg << "premeasurement_state: trace " << tr << " <= floor " << trace_floor;
    throw ZeroTraceElement(msg.str());
  }
  return QuantumState::trusted(FockOperator(element.space(), element.matrix() / tr));
}

QuantumState apd_off_premeasurement(const ApdParams& params, const FockSpace& space) {
  // Tr Pi_off = e^{-nu} sum (1-eta)^n; the prefactor cancels against the
  // entries, leaving the geometric law of the efficiency alone.
  const double r = 1.0 - params.eta;
  Matrix m = Matrix::Zero(space.dim, space.dim);
  double rn = 1.0;
  double total = 0.0;
  for (int n = 0; n < space.dim; ++n) {
    m(n, n) = rn;
    total += rn;
    rn *= r;
  }
  if (total <= kTraceFloor) {
    throw ZeroTraceElement("apd_off_premeasurement: degenerate parameters");
  }
  m /= total;
  return QuantumState::trusted(FockOperator(space, std::move(m)));
}

QuantumState premeasurement_on_asymptotic(const ApdParams& params, const FockSpace& space) {
  const double c = std::exp(-params.nu);
  const double r = 1.0 - params.eta;
  Matrix m = Matrix::Zero(space.dim, space.dim);
  double rn = 1.0;
  double total = 0.0;
  for (int n = 0; n < space.dim; ++n) {
    const double w = 1.0 - c * rn;
    m(n, n) = w;
    total += w;
    rn *= r;
  }
  if (total <= kTraceFloor) {
    throw ZeroTraceElement("premeasurement_on_asymptotic: eta = 0 and nu = 0");
  }
  m /= total;
  return QuantumState::trusted(FockOperator(space, std::move(m)));
}

QuantumState unread_mixture(const StateEnsemble& ensemble) {
  Matrix m = Matrix::Zero(ensemble.space.dim, ensemble.space.dim);
  for (const auto& [state, prob] : ensemble.entries) {
    m += prob * state.matrix();
  }
  return QuantumState::trusted(FockOperator(ensemble.space, std::move(m)));
}

QuantumState unread_mixture(const ProbeEnsemble& ensemble) {
  return unread_mixture(materialize(ensemble));
}

PropositionSet proposition_set_theta(const StateEnsemble& ensemble, double theta_tol) {
  const int dim = ensemble.space.dim;
  const QuantumState mix = unread_mixture(ensemble);
  const double dev =
      (mix.matrix() - Matrix::Identity(dim, dim) / static_cast<double>(dim))
          .cwiseAbs()
          .maxCoeff();
  if (dev > theta_tol) {
    std::ostringstream msg;
    msg << "proposition_set_theta: unread mixture deviates from 1/D by " << dev
        << " (tol " << theta_tol << ")";
    throw NotMaximallyMixed(msg.str());
  }
  PropositionSet set{ensemble.space, PropositionSet::Kind::theta, {}};
  for (const auto& [state, prob] : ensemble.entries) {
    set.ops.emplace_back(ensemble.space, static_cast<double>(dim) * prob * state.matrix());
  }
  return set;
}

double retrodictive_prob(const FockOperator& element, const FockOperator& proposition) {
  const QuantumState retro = premeasurement_state(element);
  return (retro.matrix() * proposition.matrix()).trace().real();
}

Eigen::MatrixXd bayes_retrodict(const Eigen::MatrixXd& predictive,
                                const Eigen::VectorXd& priors) {
  const Eigen::Index m_count = predictive.rows();
  const Eigen::Index n_count = predictive.cols();
  if (priors.size() != m_count) {
    throw std::invalid_argument("bayes_retrodict: priors size mismatch");
  }
  if (std::abs(priors.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("bayes_retrodict: priors must sum to 1");
  }
  Eigen::MatrixXd joint = priors.asDiagonal() * predictive;
  Eigen::MatrixXd out(m_count, n_count);
  for (Eigen::Index n = 0; n < n_count; ++n) {
    const double denom = joint.col(n).sum();
    if (denom <= 0.0) {
      throw UnreachableOutcome("bayes_retrodict: outcome " + std::to_string(n) +
                               " has zero marginal probability");
    }
    out.col(n) = joint.col(n) / denom;
  }
  return out;
}

BipartiteState tmsv(double lambda, const FockSpace& per_mode) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("tmsv: lambda must lie in [0,1)");
  }
  const int d = per_mode.dim;
  const double leak = std::pow(lambda, 2.0 * d);
  if (leak >= 1e-9) {
    std::ostringstream msg;
    msg << "tmsv: truncation leakage " << leak << " >= 1e-9 at dim " << d;
    throw TruncationLeakage(msg.str());
  }
  Vector psi = Vector::Zero(d * d);
  double amp = 1.0;
  double norm2 = 0.0;
  for (int n = 0; n < d; ++n) {
    psi(n * d + n) = amp;
    norm2 += amp * amp;
    amp *= lambda;
  }
  psi /= std::sqrt(norm2);
  FockSpace joint(d * d, per_mode.tol);
  return BipartiteState{
      QuantumState::trusted(FockOperator(joint, psi * psi.adjoint())), d, d};
}

QuantumState partial_trace_b(const BipartiteState& resource) {
  const int da = resource.dim_a;
  const int db = resource.dim_b;
  const Matrix& r = resource.state.matrix();
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < db; ++k) {
        s += r(i * db + k, j * db + k);
      }
      out(i, j) = s;
    }
  }
  return QuantumState::trusted(FockOperator(FockSpace(da, resource.state.space().tol),
                                            std::move(out)));
}

std::pair<QuantumState, double> conditioned_state(const BipartiteState& resource,
                                                  const FockOperator& element_b,
                                                  double trace_floor) {
  const int da = resource.dim_a;
  const int db = resource.dim_b;
  if (element_b.dim() != db) {
    throw std::invalid_argument("conditioned_state: element dimension mismatch");
  }
  const Matrix& r = resource.state.matrix();
  const Matrix& pi = element_b.matrix();
  // Tr_B[rho_AB (1 x Pi)](i,j) = sum_{k,l} rho(i db + k, j db + l) Pi(l, k)
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < db; ++k) {
        for (int l = 0; l < db; ++l) {
          s += r(i * db + k, j * db + l) * pi(l, k);
        }
      }
      out(i, j) = s;
    }
  }
  const double p = out.trace().real();
  if (p <= trace_floor) {
    throw ZeroSuccessProbability("conditioned_state: heralding probability at floor");
  }
  out /= p;
  return {QuantumState::trusted(FockOperator(FockSpace(da, resource.state.space().tol),
                                             std::move(out))),
          p};
}

}  // namespace retrodict
