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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "retrodict/metrics.hpp"
#include "retrodict/retrodiction.hpp"

using namespace retrodict;

namespace {

int dim_for_eta(double eta, double floor_weight = 1e-10) {
  return 2 + static_cast<int>(std::ceil(std::log(floor_weight) / std::log(1.0 - eta)));
}

// independent purity oracle for the geometric Eq-law state, computed from
// the explicitly normalized diagonal rather than through purity()
double off_purity_oracle(double eta, int dim) {
  std::vector<double> p(dim);
  double total = 0.0;
  for (int n = 0; n < dim; ++n) {
    p[n] = std::pow(1.0 - eta, n);
    total += p[n];
  }
  double s = 0.0;
  for (int n = 0; n < dim; ++n) s += (p[n] / total) * (p[n] / total);
  return s;
}

QuantumState phase_rotate(const QuantumState& state, double theta) {
  const int dim = state.dim();
  Vector phases(dim);
  for (int n = 0; n < dim; ++n) phases(n) = std::polar(1.0, theta * n);
  Matrix u = phases.asDiagonal();
  return QuantumState::trusted(
      FockOperator(state.space(), u * state.matrix() * u.adjoint()));
}

}  // namespace

TEST_CASE("projectivity: projectors, closed form, matrix sweep") {
  FockSpace space(16);
  CHECK(projectivity(pnrd_povm(space).element("4")) == doctest::Approx(1.0).epsilon(1e-12));

  for (double eta = 0.2; eta <= 0.9 + 1e-9; eta += 0.1) {
    FockSpace big(dim_for_eta(eta));
    const Povm povm = apd_povm(ApdParams(eta, 0.3), big);
    const double numeric = projectivity(povm.element("off"));
    const double closed = eta / (2.0 - eta);
    CHECK(std::abs(numeric - off_purity_oracle(eta, big.dim)) < 1e-12);
    CHECK(std::abs(numeric - closed) / closed <= 1e-8);
  }
  FockSpace exact(8);
  CHECK(projectivity(apd_povm(ApdParams(1.0, 0.0), exact).element("off")) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("effective efficiency: scaled projector, pnrd, non-projective absence") {
  FockSpace space(12);
  Vector psi = coherent_amplitudes(Complex(0.4, 0.6), space);
  psi.normalize();
  const FockOperator scaled(space, 0.7 * (psi * psi.adjoint()));
  const auto eff = effective_efficiency(scaled);
  REQUIRE(eff.has_value());
  CHECK(*eff == doctest::Approx(0.7).epsilon(1e-12));

  CHECK(effective_efficiency(pnrd_povm(space).element("2")).value() ==
        doctest::Approx(1.0).epsilon(1e-12));

  FockSpace big(64);
  CHECK_FALSE(effective_efficiency(apd_povm(ApdParams(0.5, 0.0), big).element("off"))
                  .has_value());
}

TEST_CASE("effective efficiency defined exactly for rank-1 elements") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  FockSpace space(10);
  for (int rep = 0; rep < 10; ++rep) {
    Vector v(10);
    for (int i = 0; i < 10; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    const double scale = 0.2 + 0.75 * (rep / 10.0);
    CHECK(effective_efficiency(FockOperator(space, scale * (v * v.adjoint())))
              .has_value());

    Vector u(10);
    for (int i = 0; i < 10; ++i) u(i) = Complex(gauss(rng), gauss(rng));
    u -= v * (v.adjoint() * u)(0, 0);  // orthogonalize -> genuine rank 2
    u.normalize();
    const FockOperator rank2(space,
                             0.5 * (v * v.adjoint()) + 0.3 * (u * u.adjoint()));
    CHECK_FALSE(effective_efficiency(rank2).has_value());
  }
}

TEST_CASE("fidelity_off: values, maximum at n=0, flat low-efficiency limit") {
  CHECK(fidelity_off(0, 0.8) == 0.8);
  CHECK(fidelity_off(2, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  for (double eta : {0.2, 0.5, 0.9}) {
    for (int n = 1; n < 8; ++n) {
      CHECK(fidelity_off(0, eta) > fidelity_off(n, eta));
    }
  }
  for (int n = 0; n < 6; ++n) {
    CHECK(fidelity_off(n, 1e-9) / fidelity_off(0, 1e-9) ==
          doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("fidelity_off sums to the truncation deficit") {
  for (double eta : {0.3, 0.6, 0.9}) {
    const int dim = 40;
    double total = 0.0;
    for (int n = 0; n < dim; ++n) total += fidelity_off(n, eta);
    const double deficit = std::pow(1.0 - eta, dim);
    CHECK(std::abs(1.0 - total - deficit) < 1e-12);
  }
}

TEST_CASE("fidelity_off equals fidelity_pure against the retrodicted state") {
  FockSpace space(48);
  for (double eta : {0.4, 0.7}) {
    const QuantumState off = apd_off_premeasurement(ApdParams(eta, 0.5), space);
    const double correction = 1.0 - std::pow(1.0 - eta, space.dim);
    for (int n : {0, 1, 3, 6}) {
      Vector target = Vector::Zero(space.dim);
      target(n) = 1.0;
      CHECK(fidelity_pure(off, target) * correction ==
            doctest::Approx(fidelity_off(n, eta)).epsilon(1e-10));
    }
  }
}

TEST_CASE("fidelity_on_profile: zero-efficiency flatness, arithmetic, monotone") {
  const ApdParams blind(0.0, 0.4);
  const double flat = 1.0 - std::exp(-0.4);
  for (int n = 0; n < 10; ++n) {
    CHECK(fidelity_on_profile(n, blind) == flat);
  }
  CHECK(fidelity_on_profile(2, ApdParams(0.5, 0.0)) == doctest::Approx(0.75).epsilon(1e-15));
  const ApdParams params(0.3, 0.2);
  for (int n = 0; n < 10; ++n) {
    CHECK(fidelity_on_profile(n + 1, params) >= fidelity_on_profile(n, params));
  }
}

TEST_CASE("gaussian moments: vacuum, thermal, displaced coherent") {
  FockSpace space(40);
  const GaussianMoments vac = gaussian_moments(fock_state(0, space));
  CHECK(vac.mean.norm() < 1e-14);
  CHECK(vac.cov(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(vac.cov(1, 1) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(vac.cov(0, 1)) < 1e-14);

  const double nbar = 0.8;
  const GaussianMoments th = gaussian_moments(thermal_state(nbar, space));
  CHECK(th.cov(0, 0) == doctest::Approx(nbar + 0.5).epsilon(1e-9));
  CHECK(th.cov(1, 1) == doctest::Approx(nbar + 0.5).epsilon(1e-9));

  const GaussianMoments coh = gaussian_moments(coherent_state(0.9, space));
  CHECK(coh.mean(0) == doctest::Approx(std::numbers::sqrt2 * 0.9).epsilon(1e-10));
  CHECK(std::abs(coh.mean(1)) < 1e-12);
  CHECK(coh.cov(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(coh.cov(1, 1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(coh.cov.determinant() >= 0.25 - 1e-9);
}

TEST_CASE("non-gaussianity: zero on gaussian states, 2 ln 2 on |1>") {
  FockSpace space(48);
  CHECK(std::abs(non_gaussianity(fock_state(0, space))) < 1e-9);
  CHECK(std::abs(non_gaussianity(coherent_state(Complex(0.4, 0.7), space))) < 1e-8);
  CHECK(std::abs(non_gaussianity(thermal_state(1.3, space))) < 1e-8);

  CHECK(non_gaussianity(fock_state(1, space)) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("non-gaussianity vanishes for the off retrodiction (thermal in disguise)") {
  for (double eta : {0.3, 0.6, 0.9}) {
    FockSpace space(std::max(dim_for_eta(eta), 48));
    const QuantumState off = apd_off_premeasurement(ApdParams(eta, 0.0), space);
    CHECK(std::abs(non_gaussianity(off)) < 1e-8);
  }
}

TEST_CASE("non-gaussianity is invariant under phase rotation") {
  FockSpace space(40);
  Vector cat = coherent_amplitudes(1.1, space) + coherent_amplitudes(-1.1, space);
  cat.normalize();
  const QuantumState state =
      QuantumState::trusted(FockOperator(space, cat * cat.adjoint()));
  const double base = non_gaussianity(state);
  CHECK(base > 0.1);  // genuinely non-gaussian input
  for (double theta : {0.3, 1.2, 2.9}) {
    CHECK(non_gaussianity(phase_rotate(state, theta)) ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("uhlmann fidelity: pure overlap and symmetry") {
  FockSpace space(16);
  const QuantumState a = coherent_state(0.5, space);
  const QuantumState b = coherent_state(-0.5, space);
  // rank-deficient inputs carry a sqrt(eps)-level noise floor through the
  // matrix square root, so 1e-6 is the realistic agreement scale
  CHECK(uhlmann_fidelity(a, b) == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(uhlmann_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-6));
  const QuantumState t1 = thermal_state(0.6, space);
  const QuantumState t2 = thermal_state(0.9, space);
  CHECK(uhlmann_fidelity(t1, t2) == doctest::Approx(uhlmann_fidelity(t2, t1)).epsilon(1e-10));
  CHECK(uhlmann_fidelity(t1, t2) < 1.0);
  CHECK(uhlmann_fidelity(t1, t2) > 0.9);
}

TEST_CASE("metric report bundles the per-response summary") {
  FockSpace space(64);
  const Povm povm = apd_povm(ApdParams(0.5, 0.1), space);
  const MetricReport report = metric_report(povm.element("off"), 3);
  CHECK(report.projectivity == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK_FALSE(report.effective_efficiency.has_value());
  CHECK(report.fidelities.at(0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report.fidelities.size() == 4);
  CHECK(std::abs(report.non_gaussianity) < 1e-8);
  // W(0,0) of the geometric state: (1/pi) sum (-1)^n p_n = eta/((2-eta) pi)
  CHECK(report.negativity_origin ==
        doctest::Approx(0.5 / ((2.0 - 0.5) * std::numbers::pi)).epsilon(1e-9));
}
