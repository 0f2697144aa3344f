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

#include "retrodict/detectors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace retrodict {

namespace {
constexpr double kPi = std::numbers::pi;
}

ApdParams::ApdParams(double eta_, double nu_) : eta(eta_), nu(nu_) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("ApdParams: eta must lie in [0,1]");
  }
  if (!(nu >= 0.0)) {
    throw std::invalid_argument("ApdParams: nu must be >= 0");
  }
}

HomodyneParams::HomodyneParams(double eta_, double phi_, double x_i_)
    : eta(eta_), phi(phi_), x_i(x_i_) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("HomodyneParams: eta must lie in (0,1)");
  }
}

Povm apd_povm(const ApdParams& params, const FockSpace& space) {
  const double c = std::exp(-params.nu);
  const double r = 1.0 - params.eta;
  Matrix off = Matrix::Zero(space.dim, space.dim);
  Matrix on = Matrix::Zero(space.dim, space.dim);
  double rn = 1.0;
  for (int n = 0; n < space.dim; ++n) {
    const double p_off = c * rn;
    off(n, n) = p_off;
    on(n, n) = 1.0 - p_off;
    rn *= r;
  }
  Povm povm{space, {}, 0.0};
  povm.completeness_tol = 1e-15;
  povm.elements.emplace_back("off", FockOperator(space, std::move(off)));
  povm.elements.emplace_back("on", FockOperator(space, std::move(on)));
  return povm;
}

double apd_on_prob(int n, const ApdParams& params) {
  if (n < 0) throw std::invalid_argument("apd_on_prob: n must be >= 0");
  const double c = std::exp(-params.nu);
  const double r = 1.0 - params.eta;
  double rn = 1.0;
  for (int k = 0; k < n; ++k) rn *= r;
  return 1.0 - c * rn;
}

Povm pnrd_povm(const FockSpace& space) {
  Povm povm{space, {}, 0.0};
  povm.completeness_tol = 1e-15;
  for (int n = 0; n < space.dim; ++n) {
    Matrix m = Matrix::Zero(space.dim, space.dim);
    m(n, n) = 1.0;
    povm.elements.emplace_back(std::to_string(n), FockOperator(space, std::move(m)));
  }
  return povm;
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  // Christoffel form w = sqrt(pi)/sum_k h_k(x)^2. The eigenvector-squared
  // route floors at eps^2 instead of decaying like e^{-x^2}, which wrecks
  // integrands with polynomial growth at the extreme nodes.
  for (int q = 0; q < n; ++q) {
    const double x = rule.nodes(q);
    double hm1 = 0.0;
    double h = 1.0;
    double sum = 1.0;
    for (int k = 0; k + 1 < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * x * h - std::sqrt(k / (k + 1.0)) * hm1;
      hm1 = h;
      h = next;
      sum += h * h;
      if (sum > 1e300) {
        sum = std::numeric_limits<double>::infinity();
        break;
      }
    }
    rule.weights(q) = std::isinf(sum) ? 0.0 : std::sqrt(kPi) / sum;
  }
  return rule;
}

Eigen::VectorXd hermite_normalized(int count, double y) {
  Eigen::VectorXd h(count);
  h(0) = 1.0;
  if (count > 1) h(1) = std::sqrt(2.0) * y;
  for (int n = 1; n + 1 < count; ++n) {
    h(n + 1) = std::sqrt(2.0 / (n + 1)) * y * h(n) - std::sqrt(n / (n + 1.0)) * h(n - 1);
  }
  return h;
}

namespace {

// Real symmetric core of the HD element: (e^{-xI^2}/pi) * GH sum of
// h_m(y) h_n(y) with y = sqrt(1-eta) u + sqrt(eta) xI. The integrand is a
// polynomial of degree m+n in u, so any rule with >= D nodes is exact; the
// doubling check guards the contract anyway.
Eigen::MatrixXd hd_core(const HomodyneParams& params, int dim, int nodes) {
  const GaussHermiteRule rule = gauss_hermite(nodes);
  const double se = std::sqrt(1.0 - params.eta);
  const double mean = std::sqrt(params.eta) * params.x_i;
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(dim, dim);
  for (int q = 0; q < nodes; ++q) {
    const double y = se * rule.nodes(q) + mean;
    const Eigen::VectorXd h = hermite_normalized(dim, y);
    core.selfadjointView<Eigen::Lower>().rankUpdate(h, rule.weights(q));
  }
  core = core.selfadjointView<Eigen::Lower>();
  core *= std::exp(-params.x_i * params.x_i) / kPi;
  return core;
}

Matrix apply_phase(const Eigen::MatrixXd& core, double phi) {
  const int dim = static_cast<int>(core.rows());
  Matrix out(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      out(m, n) = std::polar(1.0, phi * (m - n)) * core(m, n);
    }
  }
  return out;
}

}  // namespace

FockOperator hd_povm_element(const HomodyneParams& params, const FockSpace& space) {
  int nodes = 4 * space.dim;
  Eigen::MatrixXd core = hd_core(params, space.dim, nodes);
  double err = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    Eigen::MatrixXd refined = hd_core(params, space.dim, 2 * nodes);
    err = std::abs(refined(space.dim - 1, space.dim - 1) - core(space.dim - 1, space.dim - 1));
    if (err < 1e-12) {
      return FockOperator(space, apply_phase(core, params.phi));
    }
    core = std::move(refined);
    nodes *= 2;
  }
  if (err > 1e-9) {
    std::ostringstream msg;
    msg << "hd_povm_element: top-corner quadrature error " << err
        << " after node doubling up to " << nodes;
    throw QuadratureUnderresolved(msg.str());
  }
  return FockOperator(space, apply_phase(core, params.phi));
}

namespace {

// Bin kernels (1/2)[erf((b - sqrt(eta) x)/sqrt(1-eta)) - erf(a-side)] sum to
// one over the full bin set, so quadrature completeness is exact.
Eigen::MatrixXd hd_bin_core(double eta, int dim, double lo, double hi, int nodes,
                            const GaussHermiteRule& rule) {
  const double seta = std::sqrt(eta);
  const double width = std::sqrt(1.0 - eta);
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(dim, dim);
  for (int q = 0; q < nodes; ++q) {
    const double x = rule.nodes(q);
    const double top = std::isinf(hi) ? 1.0 : std::erf((hi - seta * x) / width);
    const double bot = std::isinf(lo) ? -1.0 : std::erf((lo - seta * x) / width);
    const double kern = 0.5 * (top - bot);
    if (kern == 0.0) continue;
    const Eigen::VectorXd h = hermite_normalized(dim, x);
    core.selfadjointView<Eigen::Lower>().rankUpdate(h, rule.weights(q) * kern);
  }
  core = core.selfadjointView<Eigen::Lower>();
  core /= std::sqrt(kPi);
  return core;
}

std::string format_center(double c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

}  // namespace

Povm hd_binned_povm(double eta, double phi, const HomodyneBinning& binning,
                    const FockSpace& space) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("hd_binned_povm: eta must lie in (0,1)");
  }
  if (!(binning.dx > 0.0 && binning.x_max > 0.0)) {
    throw std::invalid_argument("hd_binned_povm: dx and x_max must be positive");
  }
  const int half = static_cast<int>(std::round(binning.x_max / binning.dx));
  const int nbins = 2 * half;
  const int nodes = 8 * space.dim;
  const GaussHermiteRule rule = gauss_hermite(nodes);

  Povm povm{space, {}, 0.0};
  povm.completeness_tol = 1e-10;
  const double inf = std::numeric_limits<double>::infinity();
  povm.elements.emplace_back(
      "lo", FockOperator(space, apply_phase(
                hd_bin_core(eta, space.dim, -inf, -binning.x_max, nodes, rule), phi)));
  for (int b = 0; b < nbins; ++b) {
    const double lo = -binning.x_max + b * binning.dx;
    const double hi = lo + binning.dx;
    povm.elements.emplace_back(
        format_center(0.5 * (lo + hi)),
        FockOperator(space, apply_phase(hd_bin_core(eta, space.dim, lo, hi, nodes, rule), phi)));
  }
  povm.elements.emplace_back(
      "hi", FockOperator(space, apply_phase(
                hd_bin_core(eta, space.dim, binning.x_max, inf, nodes, rule), phi)));
  return povm;
}

double predictive_prob(const QuantumState& state, const FockOperator& element) {
  const double tol = state.space().tol;
  double p = (state.matrix() * element.matrix()).trace().real();
  if (p < 0.0 && p >= -tol) p = 0.0;
  if (p > 1.0 && p <= 1.0 + tol) p = 1.0;
  return p;
}

}  // namespace retrodict
