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

#include "retrodict/wigner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "retrodict/kernels/wigner_kernels.hpp"

namespace retrodict {

namespace {
constexpr double kPi = std::numbers::pi;

void check_spec(const GridSpec& spec) {
  if (spec.nx < 2 || spec.np < 2) {
    throw std::invalid_argument("GridSpec: nx and np must be >= 2");
  }
  if (!(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min)) {
    throw std::invalid_argument("GridSpec: empty ranges");
  }
}
}  // namespace

WignerGrid WignerGrid::zeros(const GridSpec& spec) {
  check_spec(spec);
  WignerGrid g{spec, {}};
  g.values.assign(static_cast<std::size_t>(spec.nx) * spec.np, 0.0);
  return g;
}

double WignerGrid::cell_sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * dx() * dp();
}

double WignerGrid::min_value() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) m = std::min(m, v);
  return m;
}

WignerGrid wigner_transform(const FockOperator& op, const GridSpec& spec) {
  if (op.hermiticity_error() > op.space().tol) {
    throw std::invalid_argument("wigner_transform: operator must be Hermitian");
  }
  WignerGrid grid = WignerGrid::zeros(spec);
  const kernels::PackedHermitian packed = kernels::pack_hermitian(op.matrix());
  const std::size_t total = grid.values.size();
  std::vector<double> xs(total), ps(total);
  std::size_t idx = 0;
  for (int ix = 0; ix < spec.nx; ++ix) {
    const double x = grid.x_at(ix);
    for (int ip = 0; ip < spec.np; ++ip, ++idx) {
      xs[idx] = x;
      ps[idx] = grid.p_at(ip);
    }
  }
  kernels::fock_wigner_eval(packed, xs.data(), ps.data(), grid.values.data(), total);
  return grid;
}

double wigner_transform_point(const FockOperator& op, double x, double p) {
  const kernels::PackedHermitian packed = kernels::pack_hermitian(op.matrix());
  double w = 0.0;
  kernels::fock_wigner_eval(packed, &x, &p, &w, 1);
  return w;
}

SeriesValue wigner_on_closed(double x, double p, const ApdParams& params, int terms) {
  if (terms < 1) throw std::invalid_argument("wigner_on_closed: terms must be >= 1");
  const double q = std::abs(params.eta - 1.0);
  double bound;
  if (q >= 1.0) {
    bound = std::numeric_limits<double>::infinity();
  } else {
    bound = std::exp(-params.nu) / kPi * std::pow(q, terms) / (1.0 - q);
  }
  if (bound > 1e-10) {
    std::ostringstream msg;
    msg << "wigner_on_closed: remainder bound " << bound << " after " << terms
        << " terms exceeds 1e-10";
    throw SeriesNotConverged(msg.str());
  }
  double w = 0.0;
  kernels::apd_on_series_eval(params.eta, params.nu, terms, &x, &p, &w, 1);
  return {w, bound};
}

double wigner_off_limit(double x, double p, const ApdParams& params) {
  const double r2 = x * x + p * p;
  return std::exp(-params.nu) / (kPi * (2.0 - params.eta)) *
         std::exp(-params.eta * r2 / (2.0 - params.eta));
}

double wigner_on_limit(double x, double p, const ApdParams& params) {
  return 0.5 / kPi - wigner_off_limit(x, p, params);
}

double negativity_on(const ApdParams& params) {
  return 0.5 / kPi - std::exp(-params.nu) / (kPi * (2.0 - params.eta));
}

double negativity_threshold(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("negativity_threshold: eta must lie in (0,1]");
  }
  return -std::log1p(-0.5 * eta);
}

double wigner_hd_point(const HomodyneParams& params, double x, double p) {
  (void)p;  // flat along the conjugate quadrature
  const double var = (1.0 - params.eta) / (2.0 * params.eta);
  const double center = params.x_i / std::sqrt(params.eta);
  const double d = x - center;
  const double amp = 1.0 / std::sqrt(8.0 * kPi * kPi * kPi * params.eta * var);
  return amp * std::exp(-d * d / (2.0 * var));
}

WignerGrid wigner_hd(const HomodyneParams& params, const GridSpec& spec) {
  WignerGrid grid = WignerGrid::zeros(spec);
  for (int ix = 0; ix < spec.nx; ++ix) {
    const double v = wigner_hd_point(params, grid.x_at(ix), 0.0);
    for (int ip = 0; ip < spec.np; ++ip) grid.at(ix, ip) = v;
  }
  return grid;
}

HdRetroParams::HdRetroParams(HomodyneParams hd_, double excess_noise_)
    : hd(hd_), excess_noise(excess_noise_) {
  if (!(excess_noise >= 10.0)) {
    throw std::invalid_argument("HdRetroParams: excess_noise must be >= 10");
  }
}

WignerGrid hd_retro_wigner(const HdRetroParams& params, const GridSpec& spec) {
  const double eta = params.hd.eta;
  const double s = (1.0 - eta) / eta;
  const double en = params.excess_noise;
  const double center = params.hd.x_i / std::sqrt(eta);
  const double amp = 1.0 / (kPi * std::sqrt(1.0 + en * s));
  const double pdenom = 1.0 / s + en;
  WignerGrid grid = WignerGrid::zeros(spec);
  for (int ix = 0; ix < spec.nx; ++ix) {
    const double dxv = grid.x_at(ix) - center;
    const double ex = std::exp(-dxv * dxv / s);
    for (int ip = 0; ip < spec.np; ++ip) {
      const double pv = grid.p_at(ip);
      grid.at(ix, ip) = amp * ex * std::exp(-pv * pv / pdenom);
    }
  }
  return grid;
}

double tmsv_wigner(double lambda, double xa, double pa, double xb, double pb) {
  const double r = std::atanh(lambda);
  const double em = std::exp(-2.0 * r);
  const double ep = std::exp(2.0 * r);
  const double sum_x = xa + xb;
  const double dif_p = pa - pb;
  const double dif_x = xa - xb;
  const double sum_p = pa + pb;
  const double e = -0.5 * em * (sum_x * sum_x + dif_p * dif_p) -
                   0.5 * ep * (dif_x * dif_x + sum_p * sum_p);
  return std::exp(e) / (kPi * kPi);
}

WignerGrid conditioned_wigner_convolution(
    const std::function<double(double, double, double, double)>& w_ab,
    const WignerGrid& w_retr, const GridSpec& out) {
  WignerGrid grid = WignerGrid::zeros(out);
  const GridSpec& in = w_retr.spec;
  for (int ix = 0; ix < out.nx; ++ix) {
    const double x = grid.x_at(ix);
    for (int ip = 0; ip < out.np; ++ip) {
      const double p = grid.p_at(ip);
      double acc = 0.0;
      std::size_t idx = 0;
      for (int jx = 0; jx < in.nx; ++jx) {
        const double xb = w_retr.x_at(jx);
        for (int jp = 0; jp < in.np; ++jp, ++idx) {
          acc += w_ab(x, p, xb, w_retr.p_at(jp)) * w_retr.values[idx];
        }
      }
      grid.at(ix, ip) = acc;
    }
  }
  const double mass = grid.cell_sum();
  if (!(mass > 0.0)) {
    throw ZeroSuccessProbability("conditioned_wigner_convolution: nonpositive mass");
  }
  for (double& v : grid.values) v /= mass;
  return grid;
}

GridMoments grid_moments(const WignerGrid& grid) {
  double mass = 0.0, mx = 0.0, mp = 0.0;
  for (int ix = 0; ix < grid.spec.nx; ++ix) {
    for (int ip = 0; ip < grid.spec.np; ++ip) {
      const double w = grid.at(ix, ip);
      mass += w;
      mx += w * grid.x_at(ix);
      mp += w * grid.p_at(ip);
    }
  }
  if (mass == 0.0) {
    throw std::invalid_argument("grid_moments: zero mass");
  }
  mx /= mass;
  mp /= mass;
  double cxx = 0.0, cpp = 0.0, cxp = 0.0;
  for (int ix = 0; ix < grid.spec.nx; ++ix) {
    const double dxv = grid.x_at(ix) - mx;
    for (int ip = 0; ip < grid.spec.np; ++ip) {
      const double dpv = grid.p_at(ip) - mp;
      const double w = grid.at(ix, ip);
      cxx += w * dxv * dxv;
      cpp += w * dpv * dpv;
      cxp += w * dxv * dpv;
    }
  }
  GridMoments out;
  out.mass = mass * grid.dx() * grid.dp();
  out.mean << mx, mp;
  out.cov << cxx / mass, cxp / mass, cxp / mass, cpp / mass;
  return out;
}

}  // namespace retrodict
