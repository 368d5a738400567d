// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/numkit/special.hpp"

#include <cmath>
#include <numbers>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/quadrature.hpp"

namespace cubicpt {

using cplx = std::complex<double>;

double gamma(double x) {
  if (!(x > 0.0) || x > 170.0) throw DomainError("gamma: argument outside (0, 170]");
  return std::tgamma(x);
}

namespace {

constexpr double kSeriesRadius = 2.5;

cplx airy_series(cplx z) {
  const double ai0 = 0.355028053887817239260063186004183;   // 3^{-2/3}/Gamma(2/3)
  const double aip0 = 0.258819403792806798405183560189203;  // 3^{-1/3}/Gamma(1/3)
  const cplx z3 = z * z * z;
  cplx f = 1.0, g = z;
  cplx tf = 1.0, tg = z;
  for (int k = 1; k < 200; ++k) {
    tf *= z3 / (double((3 * k - 1) * (3 * k)));
    tg *= z3 / (double((3 * k) * (3 * k + 1)));
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::abs(g)) break;
  }
  return ai0 * f - aip0 * g;
}

// exp(zeta) Ai(z) with zeta = 2/3 z^{3/2}, |arg z| <= 2pi/3:
//   zeta^{-1/6} / (sqrt(pi) 48^{1/6} Gamma(5/6)) * int_0^inf e^{-t} t^{-1/6} (2 + t/zeta)^{-1/6} dt.
// The ray of integration is turned by arg(zeta)/3, away from the branch point t = -2 zeta, and
// t = e^{i phi} u^6 removes the endpoint singularity.
cplx airy_scaled_integral(cplx z) {
  const cplx zeta = (2.0 / 3.0) * std::pow(z, 1.5);
  const cplx rot = std::polar(1.0, std::arg(zeta) / 3.0);
  const cplx jac = 6.0 * std::pow(rot, 5.0 / 6.0);
  auto integrand = [&](cplx uc) -> cplx {
    const double u = uc.real();
    const cplx t = rot * std::pow(u, 6);
    return jac * std::pow(u, 4) * std::exp(-t) * std::pow(2.0 + t / zeta, -1.0 / 6.0);
  };
  const auto r = quad_contour(integrand, ComplexPath({0.0, 1.0, 1.6, 2.4, 3.4}), 1e-15);
  const double norm = std::sqrt(std::numbers::pi) * std::pow(48.0, 1.0 / 6.0) * gamma(5.0 / 6.0);
  return std::pow(zeta, -1.0 / 6.0) * r.value / norm;
}

}  // namespace

cplx airy_ai_scaled(cplx z) {
  if (std::abs(std::arg(z)) > 2.0 * std::numbers::pi / 3.0 + 1e-12)
    throw DomainError("airy_ai_scaled: |arg z| > 2pi/3");
  if (std::abs(z) <= kSeriesRadius) return std::exp((2.0 / 3.0) * std::pow(z, 1.5)) * airy_series(z);
  return airy_scaled_integral(z);
}

cplx airy_ai(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("airy_ai: non-finite");
  if (std::abs(z) <= kSeriesRadius) return airy_series(z);
  const double a = std::abs(std::arg(z));
  if (a <= 2.0 * std::numbers::pi / 3.0) {
    const cplx zeta = (2.0 / 3.0) * std::pow(z, 1.5);
    if (zeta.real() > 740.0) return 0.0;
    return std::exp(-zeta) * airy_scaled_integral(z);
  }
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  return -w * airy_ai(w * z) - w * w * airy_ai(w * w * z);
}

}  // namespace cubicpt
