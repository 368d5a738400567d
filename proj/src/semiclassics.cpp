// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/quadrature.hpp"
#include "cubicpt/numkit/special.hpp"

namespace cubicpt {

namespace {
using std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

const ActionConstants& constants() {
  static const ActionConstants k = [] {
    ActionConstants c;
    // t = 1 - u^2 turns 1 - t^3 into u^2 (3 - 3u^2 + u^4), removing the endpoint singularity exactly.
    auto q = [](double u) { return 3.0 - 3.0 * u * u + u * u * u * u; };
    c.C = quad_interval([&](double u) { return 2.0 * u * u * std::sqrt(q(u)); }, 0.0, 1.0, 1e-15)
              .value.real();
    c.r = 0.5 * quad_interval([&](double u) { return 2.0 * (1.0 - u * u) / std::sqrt(q(u)); }, 0.0,
                              1.0, 1e-15)
                    .value.real();
    const double g23 = gamma(2.0 / 3.0), g56 = gamma(5.0 / 6.0);
    c.C_closed = 2.0 * kSqrt3 * std::pow(pi, 1.5) / (15.0 * g23 * g56);
    c.r_closed = g23 * g56 / (2.0 * std::sqrt(pi));
    c.c = std::pow(2.5, 0.2) * std::pow(pi, -0.6) * std::pow(g23, 1.2) * std::pow(g56, 1.2);
    c.c_log = std::exp(0.2 * std::log(2.5) - 0.6 * std::log(pi) +
                       1.2 * std::lgamma(2.0 / 3.0) + 1.2 * std::lgamma(5.0 / 6.0));
    c.growth_rate = pi / kSqrt3;
    c.norm_prefactor = std::sqrt(2.0) / 2.0 * gamma(0.25);
    return c;
  }();
  return k;
}

cplx action_ellf(const ModelParams& p) {
  const auto tp = turning_points(p);
  auto f = [&](cplx z) { return sqrt_V(z, tp); };
  QuadOptions in, out;
  in.start = Endpoint::sqrt_singular;
  out.end = Endpoint::sqrt_singular;
  const cplx a = quad_contour(f, ComplexPath::segment(tp.minus, 0.0), 1e-14, in).value;
  const cplx b = quad_contour(f, ComplexPath::segment(0.0, tp.plus), 1e-14, out).value;
  return a + b;
}

cplx action_along(const ModelParams& p, const ComplexPath& path) {
  const auto tp = turning_points(p);
  QuadOptions o;
  o.start = Endpoint::sqrt_singular;
  o.end = Endpoint::sqrt_singular;
  return quad_contour([&](cplx z) { return sqrt_V(z, tp); }, path, 1e-13, o).value;
}

BsSolution bs_solve(int n, double alpha) {
  if (n < 0) throw DomainError("bs_solve: quantum number must be >= 0");
  const double N = n + 0.5;
  auto f = [&](double h) { return action_ellf({alpha, h}).imag() - pi * N * h; };
  double lo = 1e-8, hi = 2.0;
  if (alpha > 0.0) hi = std::min(hi, std::pow(collision_shift() / alpha, 1.25) * (1.0 - 1e-9));
  double f_hi = f(hi);
  if (f_hi > 0.0) {
    std::ostringstream m;
    m << "bs_solve: no sign change on [" << lo << ", " << hi << "] for n=" << n
      << ", alpha=" << alpha;
    throw SolverError(m.str());
  }
  double h = std::clamp(bs_two_term(n, alpha), lo, hi);
  if (!(h > lo && h < hi)) h = 0.5 * (lo + hi);
  BsSolution s;
  s.n = n;
  s.alpha = alpha;
  double fh = f(h);
  for (int it = 0; it < 200; ++it) {
    s.iterations = it + 1;
    if (std::abs(fh) <= 1e-13) break;
    if (fh > 0.0) lo = h; else hi = h;
    const double dh = 1e-6 * h;
    const double d = (f(h + dh) - f(h - dh)) / (2.0 * dh);
    double hn = h - fh / d;
    if (!(hn > lo && hn < hi) || !std::isfinite(hn)) hn = 0.5 * (lo + hi);
    h = hn;
    fh = f(h);
    if (hi - lo < 1e-15 * h) break;
  }
  if (std::abs(fh) > 1e-12) {
    std::ostringstream m;
    m << "bs_solve: no convergence, bracket [" << lo << ", " << hi << "]";
    throw SolverError(m.str());
  }
  s.h = h;
  s.lambda_bs = std::pow(h, -1.2);
  s.residual = fh;
  return s;
}

double bs_lambda(int label, double alpha, int offset) {
  if (label < 1) throw DomainError("bs_lambda: labels start at 1");
  return bs_solve(label + offset, alpha).lambda_bs;
}

double bs_two_term(int n, double alpha) {
  const auto& k = constants();
  const double N = n + 0.5;
  return kSqrt3 * k.C / (pi * N) -
         std::pow(3.0, 0.9) * alpha * k.r * std::pow(k.C, 0.8) / (std::pow(pi, 1.8) * std::pow(N, 1.8));
}

int calibrate_bs_offset(const std::vector<std::pair<int, double>>& eigenvalues, double alpha,
                        int lo, int hi) {
  int best = lo;
  double best_err = INFINITY;
  for (int off = lo; off <= hi; ++off) {
    double worst = 0.0;
    bool ok = true;
    for (const auto& [label, lambda] : eigenvalues) {
      if (label + off < 0) {
        ok = false;
        break;
      }
      worst = std::max(worst, std::abs(bs_lambda(label, alpha, off) - lambda) / lambda);
    }
    if (ok && worst < best_err) {
      best_err = worst;
      best = off;
    }
  }
  return best;
}

double predict_log_norm_sq(double alpha, double h) {
  if (!(h > 0.0)) throw DomainError("predict_log_norm_sq: h must be positive");
  const auto& k = constants();
  return std::log(k.norm_prefactor) + 0.25 * std::log(h) + k.C / h + alpha * k.r * std::pow(h, -0.2);
}

double predict_norm_sq(double alpha, double h) { return std::exp(predict_log_norm_sq(alpha, h)); }

double predict_log_kappa(int n, double alpha) {
  if (n < 1) throw DomainError("predict_log_kappa: n >= 1");
  const auto& k = constants();
  return k.growth_rate * n - 0.25 * std::log(double(n)) + alpha * k.c * std::pow(double(n), 0.2);
}

}  // namespace cubicpt
