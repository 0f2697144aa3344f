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

#include "retrodict/tomography.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace retrodict {

namespace {

constexpr double kProbFloor = 1e-300;
constexpr double kEigFloor = 1e-14;

double uniform_double(std::mt19937_64& rng) {
  // 53-bit mantissa draw; bit-identical across standard libraries, unlike
  // std::uniform_real_distribution
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void CountTable::validate() const {
  const Eigen::Index m_count = counts.rows();
  if (static_cast<std::size_t>(m_count) != probes.entries.size()) {
    throw std::invalid_argument("CountTable: row count does not match probes");
  }
  if (static_cast<std::size_t>(counts.cols()) != labels.size()) {
    throw std::invalid_argument("CountTable: column count does not match labels");
  }
  if ((counts.array() < 0.0).any()) {
    throw std::invalid_argument("CountTable: negative counts");
  }
  const double tol = 1e-6 * static_cast<double>(shots_per_probe);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    if (std::abs(counts.row(m).sum() - static_cast<double>(shots_per_probe)) > tol) {
      throw std::invalid_argument("CountTable: row " + std::to_string(m) +
                                  " does not sum to shots_per_probe");
    }
  }
}

namespace {

Eigen::MatrixXd born_matrix(const StateEnsemble& probes, const Povm& povm) {
  const Eigen::Index m_count = static_cast<Eigen::Index>(probes.entries.size());
  const Eigen::Index n_count = static_cast<Eigen::Index>(povm.elements.size());
  Eigen::MatrixXd p(m_count, n_count);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    for (Eigen::Index n = 0; n < n_count; ++n) {
      p(m, n) = predictive_prob(probes.entries[m].first, povm.elements[n].second);
    }
  }
  return p;
}

}  // namespace

CountTable simulate_counts(const ProbeEnsemble& ensemble, const Povm& povm,
                           std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("simulate_counts: shots must be >= 1");
  const double residual = povm.completeness_residual();
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "simulate_counts: POVM completeness residual " << residual << " > 1e-8";
    throw IncompletePovm(msg.str());
  }
  const StateEnsemble states = materialize(ensemble);
  const Eigen::MatrixXd p = born_matrix(states, povm);
  const Eigen::Index m_count = p.rows();
  const Eigen::Index n_count = p.cols();

  CountTable table{ensemble, {}, Eigen::MatrixXd::Zero(m_count, n_count), shots, seed};
  for (const auto& [label, op] : povm.elements) table.labels.push_back(label);

  std::mt19937_64 rng(seed);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const double total = p.row(m).sum();
    for (std::int64_t s = 0; s < shots; ++s) {
      const double u = uniform_double(rng) * total;
      double acc = 0.0;
      Eigen::Index pick = n_count - 1;
      for (Eigen::Index n = 0; n < n_count; ++n) {
        acc += p(m, n);
        if (u < acc) {
          pick = n;
          break;
        }
      }
      table.counts(m, pick) += 1.0;
    }
  }
  return table;
}

CountTable exact_frequency_table(const ProbeEnsemble& ensemble, const Povm& povm,
                                 std::int64_t shots) {
  const StateEnsemble states = materialize(ensemble);
  Eigen::MatrixXd p = born_matrix(states, povm);
  for (Eigen::Index m = 0; m < p.rows(); ++m) {
    p.row(m) *= static_cast<double>(shots) / p.row(m).sum();
  }
  CountTable table{ensemble, {}, std::move(p), shots, 0};
  for (const auto& [label, op] : povm.elements) table.labels.push_back(label);
  return table;
}

namespace {

Matrix inverse_sqrt_floor(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(kEigFloor);
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

ReconstructionReport maxlik_povm(const CountTable& table, const MaxlikOptions& options) {
  table.validate();
  const FockSpace space = table.probes.space;
  const int dim = space.dim;
  const Eigen::Index m_count = table.counts.rows();
  const Eigen::Index n_count = table.counts.cols();

  const StateEnsemble states = materialize(table.probes);
  const double norm = table.counts.sum();
  const Eigen::MatrixXd f = table.counts / norm;

  std::vector<bool> active(n_count, true);
  std::vector<std::string> notes;
  std::vector<double> ll_history;
  for (Eigen::Index n = 0; n < n_count; ++n) {
    if (table.counts.col(n).sum() == 0.0) {
      active[n] = false;
      notes.push_back("outcome '" + table.labels[n] +
                      "' never observed; element frozen at zero");
    }
  }

  // iterates; diagonal mode works on the diagonal vectors only
  std::vector<Matrix> pi(n_count, Matrix::Zero(dim, dim));
  int n_active = 0;
  for (Eigen::Index n = 0; n < n_count; ++n) n_active += active[n] ? 1 : 0;
  if (n_active == 0) throw std::invalid_argument("maxlik_povm: empty table");
  if (options.initial.has_value()) {
    if (options.initial->elements.size() != static_cast<std::size_t>(n_count)) {
      throw std::invalid_argument("maxlik_povm: initial POVM size mismatch");
    }
    for (Eigen::Index n = 0; n < n_count; ++n) {
      pi[n] = options.initial->elements[n].second.matrix();
    }
  } else {
    for (Eigen::Index n = 0; n < n_count; ++n) {
      if (active[n]) {
        pi[n] = Matrix::Identity(dim, dim) / static_cast<double>(n_active);
      }
    }
  }

  std::vector<Matrix> rho;
  rho.reserve(m_count);
  std::vector<Eigen::VectorXd> rho_diag;
  rho_diag.reserve(m_count);
  for (const auto& [state, prob] : states.entries) {
    rho.push_back(state.matrix());
    rho_diag.push_back(state.matrix().diagonal().real());
  }

  const bool diag = options.diagonal_constraint;
  auto log_likelihood = [&](const std::vector<Matrix>& elements) {
    double ll = 0.0;
    for (Eigen::Index m = 0; m < m_count; ++m) {
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        const double pmn = std::max(
            diag ? rho_diag[m].dot(elements[n].diagonal().real())
                 : rho[m].cwiseProduct(elements[n].transpose()).sum().real(),
            kProbFloor);
        ll += table.counts(m, n) * std::log(pmn);
      }
    }
    return ll;
  };

  double ll_prev = 0.0;
  bool have_prev = false;
  std::string stop_reason = "max_iters";
  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    const double ll = log_likelihood(pi);
    ll_history.push_back(ll);
    if (have_prev && std::abs(ll - ll_prev) <= options.ll_tol * std::abs(ll)) {
      stop_reason = "tol";
      break;
    }
    ll_prev = ll;
    have_prev = true;

    if (diag) {
      std::vector<Eigen::VectorXd> r(n_count, Eigen::VectorXd::Zero(dim));
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        const Eigen::VectorXd pin = pi[n].diagonal().real();
        for (Eigen::Index m = 0; m < m_count; ++m) {
          const double pmn = std::max(rho_diag[m].dot(pin), kProbFloor);
          r[n] += (f(m, n) / pmn) * rho_diag[m];
        }
      }
      Eigen::VectorXd lambda = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        lambda += r[n].cwiseProduct(r[n]).cwiseProduct(pi[n].diagonal().real());
      }
      lambda = lambda.cwiseMax(kEigFloor);
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        const Eigen::VectorXd updated =
            r[n].cwiseProduct(r[n]).cwiseProduct(pi[n].diagonal().real()).cwiseQuotient(lambda);
        pi[n] = updated.cast<Complex>().asDiagonal();
      }
    } else {
      std::vector<Matrix> r(n_count, Matrix::Zero(dim, dim));
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        for (Eigen::Index m = 0; m < m_count; ++m) {
          const double pmn =
              std::max(rho[m].cwiseProduct(pi[n].transpose()).sum().real(), kProbFloor);
          r[n] += (f(m, n) / pmn) * rho[m];
        }
      }
      Matrix lambda = Matrix::Zero(dim, dim);
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        lambda += r[n] * pi[n] * r[n];
      }
      const Matrix lam_is = inverse_sqrt_floor(0.5 * (lambda + lambda.adjoint()));
      for (Eigen::Index n = 0; n < n_count; ++n) {
        if (!active[n]) continue;
        pi[n] = lam_is * r[n] * pi[n] * r[n] * lam_is;
        pi[n] = 0.5 * (pi[n] + pi[n].adjoint()).eval();
      }
    }
  }
  if (stop_reason == "max_iters") {
    ll_history.push_back(log_likelihood(pi));
  }

  Povm out{space, {}, 1e-8};
  for (Eigen::Index n = 0; n < n_count; ++n) {
    out.elements.emplace_back(table.labels[n], FockOperator(space, pi[n]));
  }
  const double residual = out.completeness_residual();
  const double final_ll = ll_history.back();
  return ReconstructionReport{std::move(out),  iter,        final_ll,
                              residual,        stop_reason, std::move(ll_history),
                              std::move(notes)};
}

namespace {

struct LambdaSet {
  PropositionSet set;
  Matrix sigma_inv;  // upper-triangular inverse of the Cholesky factor
};

LambdaSet lambda_propositions_impl(const StateEnsemble& ensemble,
                                   const std::optional<QuantumState>& mixture) {
  const FockSpace space = ensemble.space;
  const QuantumState mix = mixture.value_or(unread_mixture(ensemble));
  FockOperator sigma = cholesky_factor(mix);  // throws SingularMixture
  const Matrix sigma_inv = sigma.matrix()
                               .triangularView<Eigen::Upper>()
                               .solve(Matrix::Identity(space.dim, space.dim));
  PropositionSet set{space, PropositionSet::Kind::lambda, {}};
  for (const auto& [state, prob] : ensemble.entries) {
    Matrix lam = sigma_inv.adjoint() * (prob * state.matrix()) * sigma_inv;
    set.ops.emplace_back(space, 0.5 * (lam + lam.adjoint()));
  }
  const double residual = set.completeness_residual();
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "lambda_propositions: completeness residual " << residual << " > 1e-10";
    throw SingularMixture(msg.str());
  }
  return {std::move(set), sigma_inv};
}

}  // namespace

PropositionSet lambda_propositions(const StateEnsemble& ensemble,
                                   const std::optional<QuantumState>& mixture) {
  return lambda_propositions_impl(ensemble, mixture).set;
}

PropositionSet lambda_propositions(const ProbeEnsemble& ensemble,
                                   const std::optional<QuantumState>& mixture) {
  return lambda_propositions(materialize(ensemble), mixture);
}

QuantumState qst_premeasurement(const Eigen::VectorXd& retro_probs,
                                const StateEnsemble& ensemble,
                                const QstOptions& options) {
  if (static_cast<std::size_t>(retro_probs.size()) != ensemble.entries.size()) {
    throw std::invalid_argument("qst_premeasurement: probability column size mismatch");
  }
  if ((retro_probs.array() < -1e-12).any() || std::abs(retro_probs.sum() - 1.0) > 1e-6) {
    throw std::invalid_argument("qst_premeasurement: column is not a distribution");
  }
  const FockSpace space = ensemble.space;
  const int dim = space.dim;
  const LambdaSet lam = lambda_propositions_impl(ensemble, options.mixture);
  const Eigen::Index m_count = static_cast<Eigen::Index>(lam.set.ops.size());

  Matrix rho = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  double ll_prev = 0.0;
  bool have_prev = false;
  bool converged = false;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    double ll = 0.0;
    Matrix r = Matrix::Zero(dim, dim);
    for (Eigen::Index m = 0; m < m_count; ++m) {
      const double q = std::max(
          lam.set.ops[m].matrix().cwiseProduct(rho.transpose()).sum().real(), kProbFloor);
      ll += retro_probs(m) * std::log(q);
      r += (retro_probs(m) / q) * lam.set.ops[m].matrix();
    }
    if (have_prev && std::abs(ll - ll_prev) <= options.ll_tol * std::abs(ll)) {
      converged = true;
      break;
    }
    ll_prev = ll;
    have_prev = true;
    rho = (r * rho * r).eval();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (options.diagonal_constraint) {
      rho = Matrix(rho.diagonal().asDiagonal());
    }
    rho /= rho.trace().real();
  }
  if (!converged) {
    throw NoConvergence("qst_premeasurement: max_iters reached before ll_tol");
  }
  Matrix recovered = lam.sigma_inv * rho * lam.sigma_inv.adjoint();
  recovered = 0.5 * (recovered + recovered.adjoint()).eval();
  return repair_state(FockOperator(space, std::move(recovered)));
}

QuantumState qst_premeasurement(const Eigen::VectorXd& retro_probs,
                                const ProbeEnsemble& ensemble,
                                const QstOptions& options) {
  return qst_premeasurement(retro_probs, materialize(ensemble), options);
}

Eigen::MatrixXd qdt_retrodict(const Eigen::MatrixXd& predictive) {
  Eigen::MatrixXd out(predictive.rows(), predictive.cols());
  for (Eigen::Index n = 0; n < predictive.cols(); ++n) {
    const double denom = predictive.col(n).sum();
    if (denom <= 0.0) {
      throw UnreachableOutcome("qdt_retrodict: outcome column " + std::to_string(n) +
                               " has no support");
    }
    out.col(n) = predictive.col(n) / denom;
  }
  return out;
}

Eigen::MatrixXd qdt_retrodict(const CountTable& table) {
  table.validate();
  return qdt_retrodict(table.counts / static_cast<double>(table.shots_per_probe));
}

double trace_distance(const FockOperator& a, const FockOperator& b) {
  FockOperator d = a - b;
  return 0.5 * d.eigenvalues().cwiseAbs().sum();
}

QuantumState repair_state(const FockOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (op.matrix() + op.matrix().adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (total <= kTraceFloor) {
    throw ZeroTraceElement("repair_state: nothing left after clipping");
  }
  ev /= total;
  Matrix m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return QuantumState::trusted(FockOperator(op.space(), std::move(m)));
}

}  // namespace retrodict
