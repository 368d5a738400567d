// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>

#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt {

// 7-point Gauss / 15-point Kronrod abscissae on [-1, 1]; xgk[1], xgk[3], xgk[5], xgk[7] are Gauss nodes.
struct Gk15 {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct GkEstimate {
  cplx kronrod;
  cplx gauss;
  double abs_integral = 0.0;  // 15-point rule applied to |g|
};

// Applies the G7/K15 pair to g on [a, b].
GkEstimate gk15(const std::function<cplx(double)>& g, double a, double b);

enum class Endpoint { regular, sqrt_singular };

struct QuadOptions {
  Endpoint start = Endpoint::regular;
  Endpoint end = Endpoint::regular;
  double graded_fraction = 0.1;  // share of the arc length mapped by s = u^2 near a singular end
  std::size_t max_intervals = 20000;
};

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = true;
};

// Adaptive G7/K15 quadrature of f(z) dz along a polyline with compensated accumulation.
// Stops when the error estimate is below max(tol*|I|, 50*eps*integral of |f|).
QuadResult quad_contour(const std::function<cplx(cplx)>& f, const ComplexPath& path, double tol,
                        const QuadOptions& options = {});

// Same engine on a real interval with a real integrand.
QuadResult quad_interval(const std::function<double(double)>& f, double a, double b, double tol,
                         const QuadOptions& options = {});

}  // namespace cubicpt
