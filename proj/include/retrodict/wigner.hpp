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

#ifndef RETRODICT_WIGNER_HPP
#define RETRODICT_WIGNER_HPP

#include <functional>

#include "retrodict/detectors.hpp"
#include "retrodict/fock.hpp"

namespace retrodict {

// Convention anchors (hbar = 1, vacuum quadrature variance 1/2): the vacuum
// state has W(0,0) = 1/pi and the identity operator has W == 1/(2 pi).
// Integrals of W over the plane reproduce traces.

/// Uniform rectangular phase-space grid, endpoints included.
struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  int nx = 201;
  int np = 201;
};

struct WignerGrid {
  GridSpec spec;
  std::vector<double> values;  // row-major, index ix * np + ip

  static WignerGrid zeros(const GridSpec& spec);

  double dx() const { return (spec.x_max - spec.x_min) / (spec.nx - 1); }
  double dp() const { return (spec.p_max - spec.p_min) / (spec.np - 1); }
  double x_at(int ix) const { return spec.x_min + ix * dx(); }
  double p_at(int ip) const { return spec.p_min + ip * dp(); }
  double& at(int ix, int ip) { return values[static_cast<std::size_t>(ix) * spec.np + ip]; }
  double at(int ix, int ip) const {
    return values[static_cast<std::size_t>(ix) * spec.np + ip];
  }

  /// Riemann cell sum approximating the integral over the grid footprint.
  double cell_sum() const;
  double min_value() const;
};

/// Fock-kernel Wigner transform of a Hermitian operator, evaluated on the
/// grid. Accurate when the operator's Fock occupation decays inside the
/// truncation; the projected identity instead carries an O(D^{-1/4})
/// oscillation, for which the 1/(2 pi) anchor plus linearity is the exact
/// route.
WignerGrid wigner_transform(const FockOperator& op, const GridSpec& spec);

/// Pointwise transform at a single phase-space point.
double wigner_transform_point(const FockOperator& op, double x, double p);

struct SeriesValue {
  double value;
  double remainder_bound;
};

/// Alternating Laguerre series for the APD 'on' Wigner function, truncated
/// at `terms`. The geometric remainder bound uses |L_m(z) e^{-z/2}| <= 1;
/// throws SeriesNotConverged when it exceeds 1e-10.
SeriesValue wigner_on_closed(double x, double p, const ApdParams& params, int terms);

/// Series limit in closed form:
/// 1/(2 pi) - e^{-nu}/(pi (2-eta)) e^{-eta r^2/(2-eta)}.
double wigner_on_limit(double x, double p, const ApdParams& params);

/// W_off in closed form; wigner_on_limit = 1/(2 pi) - this.
double wigner_off_limit(double x, double p, const ApdParams& params);

/// Negativity signature N_on = W_on(0,0).
double negativity_on(const ApdParams& params);

/// Dark-count threshold nu*(eta) = -ln(1 - eta/2) where N_on changes sign.
double negativity_threshold(double eta);

/// Wigner representation of the homodyne POVM element: Gaussian ridge at
/// x = x_i/sqrt(eta) with variance (1-eta)/(2 eta), flat along p.
WignerGrid wigner_hd(const HomodyneParams& params, const GridSpec& spec);

double wigner_hd_point(const HomodyneParams& params, double x, double p);

/// Homodyne retrodiction regularized by a large excess noise along the
/// conjugate quadrature.
struct HdRetroParams {
  HomodyneParams hd;
  double excess_noise = 1e3;

  HdRetroParams(HomodyneParams hd_, double excess_noise_ = 1e3);
};

/// Pre-measurement state of inefficient homodyne detection: normalized
/// Gaussian with x-variance s(eta)/2, p-variance (1/s + e_n)/2, centered at
/// (x_i/sqrt(eta), 0), s = (1-eta)/eta.
WignerGrid hd_retro_wigner(const HdRetroParams& params, const GridSpec& spec);

/// Two-mode squeezed vacuum Wigner function, lambda = tanh(r).
double tmsv_wigner(double lambda, double xa, double pa, double xb, double pb);

/// Conditioned-state Wigner function as the normalized phase-space overlap
/// of a bipartite resource with the retrodicted element on mode B:
/// W_cond(x,p) ~ integral dx'dp' W_AB(x,p;x',p') W_retr(x',p'). `w_retr` is
/// sampled on `inner`, the output on `out`; the result is normalized to
/// unit cell sum over `out`.
WignerGrid conditioned_wigner_convolution(
    const std::function<double(double, double, double, double)>& w_ab,
    const WignerGrid& w_retr, const GridSpec& out);

/// First and second moments of a Wigner grid by cell sums, normalized by
/// the grid's own mass.
struct GridMoments {
  double mass;
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};
GridMoments grid_moments(const WignerGrid& grid);

}  // namespace retrodict

#endif  // RETRODICT_WIGNER_HPP
