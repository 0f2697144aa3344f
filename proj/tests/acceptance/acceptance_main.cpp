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

// Acceptance suite: one line per criterion, every tolerance pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "retrodict/metrics.hpp"
#include "retrodict/serialization.hpp"
#include "retrodict/tomography.hpp"
#include "retrodict/wigner.hpp"

using namespace retrodict;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int g_failures = 0;

void run_criterion(int index, const std::string& name, double budget_seconds,
                   const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && elapsed >= budget_seconds) {
    check.require(false, "runtime " + std::to_string(elapsed) + " s exceeds budget");
  }
  if (check.ok) {
    std::printf("PASS criterion %d: %s (%.2f s)\n", index, name.c_str(), elapsed);
  } else {
    std::printf("FAIL criterion %d: %s -- %s (%.2f s)\n", index, name.c_str(),
                check.detail.c_str(), elapsed);
    ++g_failures;
  }
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// --- criterion 1 -----------------------------------------------------------

void negativity_threshold_criterion(Check& check) {
  for (int k = 1; k <= 20; ++k) {
    const double eta = 0.05 * k;
    double lo = 0.0, hi = 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (negativity_on(ApdParams(eta, mid)) < 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double expected = negativity_threshold(eta);
    check.require(std::abs(root - expected) <= 1e-12,
                  "zero contour at eta=" + fmt(eta) + " off by " +
                      fmt(std::abs(root - expected)));
  }
  check.require(std::abs(negativity_on(ApdParams(1.0, 0.0)) + 0.5 / kPi) <= 1e-12,
                "N_on(1,0) differs from -1/(2 pi)");
}

// --- criterion 2 -----------------------------------------------------------

void closed_vs_matrix_criterion(Check& check) {
  const FockSpace space(48);
  for (double eta : {0.3, 0.6, 0.9}) {
    // terms chosen so the geometric remainder bound sits at or below 1e-10
    const double q = 1.0 - eta;
    int terms = 4;
    while (std::pow(q, terms) / ((1.0 - q) * kPi) > 1e-10) ++terms;
    for (double nu : {0.0, 0.2, 0.7}) {
      const ApdParams params(eta, nu);
      const Povm povm = apd_povm(params, space);
      const GridSpec spec{-3.0, 3.0, -3.0, 3.0, 61, 61};
      const WignerGrid off = wigner_transform(povm.element("off"), spec);
      double sup = 0.0;
      for (int ix = 0; ix < spec.nx; ++ix) {
        for (int ip = 0; ip < spec.np; ++ip) {
          // transform of 1 - Pi_off: identity enters through its anchor
          const double matrix_route = 0.5 / kPi - off.at(ix, ip);
          const double series =
              wigner_on_closed(off.x_at(ix), off.p_at(ip), params, terms).value;
          sup = std::max(sup, std::abs(matrix_route - series));
        }
      }
      check.require(sup <= 1e-8, "sup-norm " + fmt(sup) + " at eta=" + fmt(eta) +
                                     " nu=" + fmt(nu));
    }
  }
}

// --- criterion 3 -----------------------------------------------------------

void projectivity_criterion(Check& check) {
  for (double eta : {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
    const int dim =
        eta < 1.0 ? 2 + static_cast<int>(std::ceil(std::log(1e-10) / std::log(1.0 - eta)))
                  : 8;
    const FockSpace space(dim);
    const double closed = eta / (2.0 - eta);
    for (double nu : {0.0, 1.0}) {
      const Povm povm = apd_povm(ApdParams(eta, nu), space);
      const double numeric = purity(premeasurement_state(povm.element("off")));
      check.require(std::abs(numeric - closed) / closed <= 1e-8,
                    "purity rel err at eta=" + fmt(eta) + " nu=" + fmt(nu));
    }
    // nu-independence, exact: the library's off retrodiction cancels e^{-nu}
    // analytically, so the matrices for nu=0 and nu=1 are identical
    const QuantumState a = apd_off_premeasurement(ApdParams(eta, 0.0), space);
    const QuantumState b = apd_off_premeasurement(ApdParams(eta, 1.0), space);
    bool identical = true;
    for (int n = 0; n < dim; ++n) {
      identical = identical &&
                  (a.matrix()(n, n).real() == b.matrix()(n, n).real()) &&
                  (a.matrix()(n, n).imag() == b.matrix()(n, n).imag());
    }
    check.require(identical, "analytic off-retrodictions differ across nu at eta=" + fmt(eta));
    // and the generic normalized-element route agrees with the analytic one
    for (double nu : {0.0, 1.0}) {
      const Povm povm = apd_povm(ApdParams(eta, nu), space);
      const QuantumState generic = premeasurement_state(povm.element("off"));
      check.require((generic.matrix() - a.matrix()).cwiseAbs().maxCoeff() <= 1e-14,
                    "generic route deviates at eta=" + fmt(eta) + " nu=" + fmt(nu));
    }
  }
}

// --- criterion 4 -----------------------------------------------------------

void fidelity_curves_criterion(Check& check) {
  const FockSpace space(48);
  for (double eta : {0.2, 0.5, 0.8}) {
    const QuantumState off = apd_off_premeasurement(ApdParams(eta, 0.4), space);
    const double correction = 1.0 - std::pow(1.0 - eta, space.dim);
    for (int n = 0; n <= 6; ++n) {
      double closed = eta;
      for (int k = 0; k < n; ++k) closed *= 1.0 - eta;
      check.require(fidelity_off(n, eta) == closed,
                    "fidelity_off closed form at n=" + std::to_string(n));
      Vector target = Vector::Zero(space.dim);
      target(n) = 1.0;
      const double via_state = fidelity_pure(off, target) * correction;
      check.require(std::abs(via_state - closed) <= 1e-10,
                    "fidelity_pure route off by " + fmt(std::abs(via_state - closed)));
    }
  }
  // Pr(on|n) closed form is the same expression tree as the POVM diagonal
  for (double eta : {0.0, 0.5, 0.9}) {
    for (double nu : {0.0, 0.3}) {
      const ApdParams params(eta, nu);
      const Povm povm = apd_povm(params, space);
      for (int n = 0; n < space.dim; ++n) {
        const QuantumState probe = fock_state(n, space);
        check.require(predictive_prob(probe, povm.element("on")) ==
                          fidelity_on_profile(n, params),
                      "Pr(on|n) mismatch at n=" + std::to_string(n));
      }
    }
  }
  // eta = 0 flatness: no interaction with the signal field
  const ApdParams blind(0.0, 0.7);
  const double level = fidelity_on_profile(0, blind);
  for (int n = 1; n < 24; ++n) {
    check.require(fidelity_on_profile(n, blind) == level, "eta=0 profile not flat");
  }
}

// --- criterion 5 -----------------------------------------------------------

void hd_squeezing_criterion(Check& check) {
  struct Case {
    double eta;
    double paper_db;
  };
  for (const Case c : {Case{0.98, -17.0}, Case{0.9, -10.0}}) {
    const double s = (1.0 - c.eta) / c.eta;
    const double sx = std::sqrt(0.5 * s);
    const double sp = std::sqrt(0.5 * (1.0 / s + 1e3));
    const double cx = 1.0 / std::sqrt(c.eta);
    const GridSpec spec{cx - 6 * sx, cx + 6 * sx, -6 * sp, 6 * sp, 201, 201};
    const WignerGrid grid =
        hd_retro_wigner(HdRetroParams(HomodyneParams(c.eta, 0.0, 1.0), 1e3), spec);
    const GridMoments m = grid_moments(grid);
    const double fitted_db = 10.0 * std::log10(2.0 * m.cov(0, 0));
    const double analytic_db = 10.0 * std::log10(s);
    check.require(std::abs(fitted_db - analytic_db) <= 0.2,
                  "fit " + fmt(fitted_db) + " dB vs analytic " + fmt(analytic_db));
    check.require(std::abs(fitted_db - c.paper_db) <= 0.5,
                  "fit " + fmt(fitted_db) + " dB vs reported " + fmt(c.paper_db));
  }
}

// --- criterion 6 -----------------------------------------------------------

void tomography_criterion(Check& check) {
  const FockSpace space(20);
  const ApdParams params(0.6, 0.05);
  const Povm truth = apd_povm(params, space);
  const ProbeEnsemble probes = ring_probes(3.0, 25, 8, space);

  MaxlikOptions options;
  options.diagonal_constraint = true;
  options.ll_tol = 1e-13;
  options.max_iters = 20000;

  const CountTable exact = exact_frequency_table(probes, truth, 100000);
  const ReconstructionReport exact_report = maxlik_povm(exact, options);
  check.require(exact_report.completeness_residual <= 1e-8,
                "exact-frequency completeness residual");
  const double exact_td = trace_distance(exact_report.povm.element("off"),
                                         truth.element("off"));
  check.require(exact_td <= 1e-3, "exact-frequency trace distance " + fmt(exact_td));

  const CountTable sampled = simulate_counts(probes, truth, 100000, 0xC0FFEE);
  const ReconstructionReport report = maxlik_povm(sampled, options);
  check.require(report.completeness_residual <= 1e-8, "sampled completeness residual");
  const double td = trace_distance(report.povm.element("off"), truth.element("off"));
  check.require(td <= 0.05, "sampled trace distance " + fmt(td));

  for (const ReconstructionReport* r : {&exact_report, &report}) {
    for (std::size_t i = 1; i < r->ll_history.size(); ++i) {
      check.require(r->ll_history[i] >=
                        r->ll_history[i - 1] - 1e-12 * std::abs(r->ll_history[i - 1]),
                    "log-likelihood dipped at iterate " + std::to_string(i));
    }
  }
}

// --- criterion 7 -----------------------------------------------------------

void recovery_criterion(Check& check) {
  const FockSpace space(12);
  const ApdParams params(0.6, 0.05);
  const Povm povm = apd_povm(params, space);
  // informationally complete rings: >= D nonzero amplitudes, >= 2D-1 phases
  const ProbeEnsemble probes = ring_probes(3.0, 13, 24, space);
  const StateEnsemble states = materialize(probes);

  const PropositionSet lambdas = lambda_propositions(probes);
  check.require(lambdas.completeness_residual() <= 1e-10, "Lambda completeness");

  Eigen::MatrixXd predictive(static_cast<Eigen::Index>(states.entries.size()), 2);
  for (Eigen::Index m = 0; m < predictive.rows(); ++m) {
    predictive(m, 0) = predictive_prob(states.entries[m].first, povm.element("off"));
    predictive(m, 1) = predictive_prob(states.entries[m].first, povm.element("on"));
  }
  const Eigen::MatrixXd retro = qdt_retrodict(predictive);
  const Eigen::VectorXd uniform =
      Eigen::VectorXd::Constant(predictive.rows(), 1.0 / predictive.rows());
  const Eigen::MatrixXd bayes = bayes_retrodict(predictive, uniform);
  check.require((retro - bayes).cwiseAbs().maxCoeff() <= 1e-15,
                "qdt_retrodict deviates from uniform-prior Bayes");

  QstOptions qst;
  qst.ll_tol = 1e-12;
  qst.max_iters = 20000;
  const QuantumState recovered = qst_premeasurement(retro.col(0), probes, qst);
  const QuantumState analytic = apd_off_premeasurement(params, space);
  const double fid = uhlmann_fidelity(recovered, analytic);
  check.require(fid >= 0.99, "recovered-state fidelity " + fmt(fid));
}

// --- criterion 8 -----------------------------------------------------------

void heralding_criterion(Check& check) {
  const double lambda = 0.3;
  const FockSpace mode(16);
  const ApdParams params(0.6, 0.0);
  const BipartiteState resource = tmsv(lambda, mode);
  const Povm povm = apd_povm(params, mode);
  const auto [heralded, p_on] = conditioned_state(resource, povm.element("on"));
  check.require(p_on > 0.0, "heralding probability vanished");

  // closed-form diagonal oracle: lambda^{2n} (1 - (1-eta)^n), normalized
  Eigen::VectorXd oracle = Eigen::VectorXd::Zero(16);
  for (int n = 0; n < 16; ++n) {
    oracle(n) = std::pow(lambda, 2.0 * n) * (1.0 - std::pow(1.0 - params.eta, n));
  }
  oracle /= oracle.sum();
  double w_origin_oracle = 0.0;
  for (int n = 0; n < 16; ++n) w_origin_oracle += ((n % 2) ? -1.0 : 1.0) * oracle(n);
  w_origin_oracle /= kPi;

  const double w_origin = wigner_transform_point(heralded.op(), 0.0, 0.0);
  check.require(w_origin < 0.0, "heralded W(0,0) is not negative");
  check.require(std::abs(w_origin - w_origin_oracle) <= 1e-8,
                "W(0,0) differs from the diagonal oracle by " +
                    fmt(std::abs(w_origin - w_origin_oracle)));
  for (int n = 0; n < 16; ++n) {
    check.require(std::abs(heralded.matrix()(n, n).real() - oracle(n)) <= 1e-8,
                  "heralded diagonal deviates at n=" + std::to_string(n));
  }

  // convolution route: resource Wigner against the retrodicted-element
  // Wigner, normalized, vs the partial-trace route's transform
  WignerGrid w_retr = WignerGrid::zeros(GridSpec{-6, 6, -6, 6, 161, 161});
  for (int ix = 0; ix < 161; ++ix) {
    for (int ip = 0; ip < 161; ++ip) {
      w_retr.at(ix, ip) = wigner_on_limit(w_retr.x_at(ix), w_retr.p_at(ip), params);
    }
  }
  const GridSpec out{-4.0, 4.0, -4.0, 4.0, 41, 41};
  const WignerGrid conv = conditioned_wigner_convolution(
      [lambda](double xa, double pa, double xb, double pb) {
        return tmsv_wigner(lambda, xa, pa, xb, pb);
      },
      w_retr, out);
  const WignerGrid direct = wigner_transform(heralded.op(), out);
  double sup = 0.0;
  for (std::size_t i = 0; i < conv.values.size(); ++i) {
    sup = std::max(sup, std::abs(conv.values[i] - direct.values[i]));
  }
  check.require(sup <= 1e-3, "convolution route deviates by " + fmt(sup));
}

// --- criterion 9 -----------------------------------------------------------

QuantumState random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QuantumState::trusted(FockOperator(FockSpace(dim), std::move(rho)));
}

void property_suite_criterion(Check& check) {
  std::mt19937_64 rng(314159);
  const FockSpace space(20);

  // probability axioms against constructed POVMs
  std::vector<Povm> povms;
  povms.push_back(apd_povm(ApdParams(0.65, 0.2), space));
  povms.push_back(pnrd_povm(space));
  povms.push_back(hd_binned_povm(0.75, 0.0, HomodyneBinning{0.5, 4.0}, space));
  for (const Povm& povm : povms) {
    for (const auto& [label, op] : povm.elements) {
      check.require(op.hermiticity_error() <= 1e-10,
                    "non-Hermitian element '" + label + "'");
      check.require(op.min_eigenvalue() >= -1e-8, "negative element '" + label + "'");
    }
    for (int rep = 0; rep < 5; ++rep) {
      const QuantumState rho = random_state(20, rng);
      double total = 0.0;
      for (const auto& [label, op] : povm.elements) {
        const double p = predictive_prob(rho, op);
        check.require(p >= -1e-9 && p <= 1.0 + 1e-9, "probability out of range");
        total += p;
      }
      check.require(std::abs(total - 1.0) <= 1e-8, "probabilities sum to " + fmt(total));
    }
  }

  // parity identity cross-check of the Wigner kernel
  for (int rep = 0; rep < 5; ++rep) {
    const QuantumState rho = random_state(24, rng);
    double parity = 0.0;
    for (int n = 0; n < 24; ++n) {
      parity += ((n % 2) ? -1.0 : 1.0) * rho.matrix()(n, n).real();
    }
    check.require(std::abs(wigner_transform_point(rho.op(), 0.0, 0.0) - parity / kPi) <=
                      1e-10,
                  "parity identity violated");
  }

  // Hudson: pure Gaussian states stay non-negative on the grid
  const FockSpace big(48);
  const GridSpec spec{-4.0, 4.0, -4.0, 4.0, 81, 81};
  Vector sq = Vector::Zero(48);
  sq(0) = 1.0;
  const double tanh_r = std::tanh(0.25);
  for (int n = 0; n + 2 < 48; n += 2) {
    sq(n + 2) = -tanh_r * std::sqrt((n + 1.0) / (n + 2.0)) * sq(n);
  }
  sq.normalize();
  const std::vector<QuantumState> gaussians = {
      fock_state(0, big), coherent_state(Complex(0.7, -0.4), big),
      QuantumState::trusted(FockOperator(big, sq * sq.adjoint()))};
  for (const QuantumState& g : gaussians) {
    check.require(wigner_transform(g.op(), spec).min_value() >= -1e-12,
                  "pure Gaussian state went negative on the grid");
  }

  // non-Gaussianity anchors
  check.require(std::abs(non_gaussianity(fock_state(0, big))) <= 1e-6, "delta(vacuum)");
  check.require(std::abs(non_gaussianity(coherent_state(0.8, big))) <= 1e-6,
                "delta(coherent)");
  check.require(std::abs(non_gaussianity(thermal_state(1.0, big))) <= 1e-6,
                "delta(thermal)");
  check.require(std::abs(non_gaussianity(fock_state(1, big)) - 2.0 * std::log(2.0)) <=
                    1e-6,
                "delta(|1>) differs from 2 ln 2");

  // seeded determinism of the stochastic path
  const ProbeEnsemble probes = ring_probes(1.5, 3, 4, space);
  const Povm apd = apd_povm(ApdParams(0.5, 0.1), space);
  const CountTable a = simulate_counts(probes, apd, 3000, 99);
  const CountTable b = simulate_counts(probes, apd, 3000, 99);
  std::ostringstream csv_a, csv_b;
  write_count_csv(csv_a, a);
  write_count_csv(csv_b, b);
  check.require(csv_a.str() == csv_b.str(), "simulate_counts not reproducible");
}

}  // namespace

int main() {
  run_criterion(1, "negativity threshold (Fig. 4 contour)", 1.0,
                negativity_threshold_criterion);
  run_criterion(2, "closed-form vs matrix Wigner agreement", 30.0,
                closed_vs_matrix_criterion);
  run_criterion(3, "projectivity of the off retrodiction", 1.0, projectivity_criterion);
  run_criterion(4, "fidelity curves (Fig. 5)", 1.0, fidelity_curves_criterion);
  run_criterion(5, "homodyne retrodiction squeezing", 5.0, hd_squeezing_criterion);
  run_criterion(6, "tomography pipeline", 120.0, tomography_criterion);
  run_criterion(7, "pre-measurement state recovery", 0.0, recovery_criterion);
  run_criterion(8, "heralded preparation (TMSV + APD)", 30.0, heralding_criterion);
  run_criterion(9, "property suites", 0.0, property_suite_criterion);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
