// SPDX-License-Identifier: Apache-2.0
// Dormand-Prince 5(4) stepping along a complex polyline, with log-scaled state.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt::detail {

template <std::size_t N>
using State = std::array<cplx, N>;

namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - bhat
inline constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
}  // namespace dp

// Rhs must provide
//   State<N> operator()(cplx z, const State<N>& y) const   -> dy/dz, linear and homogeneous in y
//   double weight(cplx z, const State<N>& y) const          -> norm of y used for error control
template <std::size_t N, class Rhs>
struct Dp54 {
  const Rhs& rhs;

  // One step of complex length H from (z, y) with k1 = rhs(z, y). Fills y5, err, k7.
  void step(cplx z, cplx H, const State<N>& y, const State<N>& k1, State<N>& y5, State<N>& err,
            State<N>& k7) const {
    using namespace dp;
    State<N> t, k2, k3, k4, k5, k6;
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + H * (a21 * k1[i]);
    k2 = rhs(z + c2 * H, t);
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + H * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(z + c3 * H, t);
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + H * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(z + c4 * H, t);
    for (std::size_t i = 0; i < N; ++i)
      t[i] = y[i] + H * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(z + c5 * H, t);
    for (std::size_t i = 0; i < N; ++i)
      t[i] = y[i] + H * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(z + H, t);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + H * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(z + H, y5);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = H * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  }

  State<N> advance(cplx z, cplx H, const State<N>& y) const {
    State<N> y5, err, k7;
    step(z, H, y, rhs(z, y), y5, err, k7);
    return y5;
  }
};

struct DriveStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double error_sq_sum = 0.0;  // sum of squared absolute-relative local error estimates
};

struct DriveLimits {
  double initial_step = 0.0;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

// Keeps max |y_i| within [2^-300, 2^300] by shifting powers of two into log_scale.
template <std::size_t N>
inline void renormalize(State<N>& y, State<N>& k, double& log_scale) {
  double m = 0.0;
  for (const auto& v : y) m = std::max(m, std::max(std::abs(v.real()), std::abs(v.imag())));
  if (m == 0.0 || (m < 0x1p300 && m > 0x1p-300)) return;
  const int e = std::ilogb(m);
  for (std::size_t i = 0; i < N; ++i) {
    y[i] = {std::ldexp(y[i].real(), -e), std::ldexp(y[i].imag(), -e)};
    k[i] = {std::ldexp(k[i].real(), -e), std::ldexp(k[i].imag(), -e)};
  }
  log_scale += e * std::log(2.0);
}

// Integrates along `path` from its first vertex. observer(s, z, y, log_scale) is called at the
// start and after every accepted step. Steps never straddle vertices.
template <std::size_t N, class Rhs, class Observer>
State<N> drive(const Rhs& rhs, const ComplexPath& path, State<N> y, double& log_scale, double tol,
               const DriveLimits& lim, DriveStats& stats, Observer&& observer) {
  constexpr double safety = 0.9, beta = 0.04, expo = 0.2 - 0.75 * beta;
  constexpr double fac_min = 0.2, fac_max = 10.0;
  Dp54<N, Rhs> rk{rhs};
  cplx z = path.front();
  double s_total = 0.0;
  observer(s_total, z, y, log_scale);
  State<N> k1 = rhs(z, y);
  double h = lim.initial_step;
  if (!(h > 0.0)) {
    double ny = 0.0, nk = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      ny = std::max(ny, std::abs(y[i]));
      nk = std::max(nk, std::abs(k1[i]));
    }
    h = (nk > 0.0 && ny > 0.0) ? 0.05 * std::pow(tol, 0.2) * ny / nk : 1e-3;
    h = std::min(h, 0.1 * path.length());
  }
  double err_old = 1e-4;
  State<N> y5, err, k7;
  for (std::size_t seg = 0; seg < path.segment_count(); ++seg) {
    const cplx v0 = path.vertices()[seg];
    const cplx v1 = path.vertices()[seg + 1];
    const cplx e = path.tangent(seg);
    const double L = path.arc_at(seg + 1) - path.arc_at(seg);
    double s = 0.0;
    while (s < L) {
      h = std::min(h, lim.max_step);
      bool last = false;
      double ds = h;
      if (s + ds >= L * (1.0 - 1e-13)) {
        ds = L - s;
        last = true;
      }
      if (ds < 1e-14 * std::max(1.0, std::abs(z)))
        throw NumericError("integrate: step size underflow");
      if (stats.accepted + stats.rejected >= lim.max_steps)
        throw NumericError("integrate: step budget exhausted");
      const cplx H = ds * e;
      rk.step(z, H, y, k1, y5, err, k7);
      const cplx z_new = last ? v1 : v0 + e * (s + ds);
      const double w = std::max(rhs.weight(z, y), rhs.weight(z_new, y5));
      double en = rhs.weight(z_new, err) / (tol * w);
      if (!std::isfinite(en)) {
        if (!std::isfinite(w) || w == 0.0) throw NumericError("integrate: non-finite state");
        en = 1e10;
      }
      if (en <= 1.0) {
        stats.accepted++;
        stats.error_sq_sum += (en * tol) * (en * tol);
        y = y5;
        k1 = k7;
        renormalize<N>(y, k1, log_scale);
        s = last ? L : s + ds;
        z = z_new;
        double fac = std::pow(std::max(en, 1e-10), expo) / std::pow(err_old, beta) / safety;
        fac = std::clamp(fac, 1.0 / fac_max, 1.0 / fac_min);
        if (!last || ds >= h) h = ds / fac;
        err_old = std::max(en, 1e-4);
        observer(last ? path.arc_at(seg + 1) : path.arc_at(seg) + s, z, y, log_scale);
      } else {
        stats.rejected++;
        const double fac = std::min(1.0 / fac_min, std::pow(en, expo) / safety);
        h = ds / fac;
      }
    }
  }
  return y;
}

}  // namespace cubicpt::detail
