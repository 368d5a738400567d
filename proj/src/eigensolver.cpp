// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/detail/dp54.hpp"
#include "cubicpt/numkit/quadrature.hpp"
#include "cubicpt/semiclassics.hpp"
#include "cubicpt/stokes.hpp"

namespace cubicpt {

namespace {

const cplx I(0.0, 1.0);

// h^2 psi'' = (i x^3 + i beta x - mu) psi.
struct Operator {
  double beta;  // alpha h^{4/5}, or alpha in physical coordinates
  cplx mu;
  double h;

  cplx V(cplx x) const { return I * x * (x * x + beta) - mu; }
  cplx dV(cplx x) const { return I * (3.0 * x * x + beta); }
  cplx q(cplx x) const { return V(x) / (h * h); }
};

// psi and its mu-derivative phi: h^2 phi'' = (V - mu) phi - psi.
struct VariationalRhs {
  Operator op;
  detail::State<4> operator()(cplx z, const detail::State<4>& y) const {
    const cplx q = op.q(z);
    return {y[1], q * y[0], y[3], q * y[2] - y[0] / (op.h * op.h)};
  }
  double weight(cplx z, const detail::State<4>& y) const {
    const double k = 1.0 / (1.0 + std::sqrt(std::abs(op.q(z))));
    return std::abs(y[0]) + k * std::abs(y[1]) + std::abs(y[2]) + k * std::abs(y[3]);
  }
};

// Logarithmic derivative of the solution decaying in the outward direction `out` at z.
cplx decaying_log_derivative(const Operator& op, cplx z, cplx out) {
  cplx w = std::sqrt(op.V(z)) / op.h;
  if ((w * out).real() < 0.0) w = -w;
  return -w - op.dV(z) / (4.0 * op.V(z));
}

struct Shot {
  detail::State<4> y;
};

Shot shoot(const Operator& op, const ComplexPath& path, double tol) {
  const cplx out = -path.tangent(0);
  detail::State<4> y{1.0, decaying_log_derivative(op, path.front(), out), 0.0, 0.0};
  double ls = 0.0;
  detail::DriveStats stats;
  VariationalRhs rhs{op};
  y = detail::drive<4>(rhs, path, y, ls, tol, detail::DriveLimits{}, stats,
                       [](double, cplx, const detail::State<4>&, double) {});
  return {y};
}

struct Match {
  cplx W, dW;
  double relative;
};

Match match(const Shot& L, const Shot& R) {
  const auto& a = L.y;
  const auto& b = R.y;
  const cplx W = b[0] * a[1] - b[1] * a[0];
  const cplx dW = b[2] * a[1] + b[0] * a[3] - b[3] * a[0] - b[1] * a[2];
  const double scale = std::abs(b[0]) * std::abs(a[1]) + std::abs(b[1]) * std::abs(a[0]);
  return {W, dW, std::abs(W) / scale};
}

struct NewtonResult {
  cplx mu;
  double residual;
  int iterations;
  bool converged;
};

NewtonResult newton(Operator op, const ComplexPath& left, const ComplexPath& right, cplx mu0,
                    double max_step, const ShootingConfig& cfg) {
  NewtonResult r{mu0, INFINITY, 0, false};
  op.mu = mu0;
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    r.iterations = it + 1;
    const Match m = match(shoot(op, left, cfg.tol_ode), shoot(op, right, cfg.tol_ode));
    r.residual = m.relative;
    if (!std::isfinite(m.relative) || m.dW == cplx(0.0)) break;
    cplx step = -m.W / m.dW;
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);
    op.mu += step;
    r.mu = op.mu;
    if (std::abs(step) <= 1e-14 * std::abs(op.mu) || m.relative <= 1e-14) {
      const Match f = match(shoot(op, left, cfg.tol_ode), shoot(op, right, cfg.tol_ode));
      r.residual = f.relative;
      r.converged = f.relative <= cfg.tol_match;
      break;
    }
  }
  return r;
}

[[noreturn]] void fail(const std::string& what, int n, double alpha, cplx mu) {
  std::ostringstream m;
  m << "solve_eigenvalue: " << what << " (n=" << n << ", alpha=" << alpha << ", last=" << mu << ")";
  throw SolverError(m.str());
}

OdeSolution shoot_samples(const Operator& op, const ComplexPath& path, cplx v0, cplx d0, double ls0,
                          double tol) {
  return integrate_ode2([op](cplx z) { return op.q(z); }, path, v0, d0, tol, {}, ls0);
}

// Scales `left` so that it matches `right` in value at the junction.
GluedSolution glue(OdeSolution left, OdeSolution right) {
  GluedSolution g;
  const auto& a = left.back();
  const auto& b = right.back();
  g.left_factor = b.value / a.value;
  g.left_log_factor = b.log_scale - a.log_scale;
  const cplx da = a.derivative * g.left_factor;
  g.junction_mismatch = std::abs(da - b.derivative) / std::max(std::abs(b.derivative), std::abs(da));
  g.left = std::move(left);
  g.right = std::move(right);
  return g;
}

Operator semiclassical_operator(const EigenRecord& rec) {
  return Operator{rec.alpha * std::pow(rec.h, 0.8), rec.lambda * std::pow(rec.h, 1.2), rec.h};
}

}  // namespace

WkbData decaying_initial_data(cplx x, const ModelParams& p, Side side) {
  if (!(p.h > 0.0)) throw DomainError("decaying_initial_data: h must be positive");
  const auto tp = turning_points(p);
  const cplx x0 = side == Side::plus ? tp.plus : tp.minus;
  auto f = [&](cplx z) { return sqrt_V(z, tp); };
  QuadOptions o;
  o.start = Endpoint::sqrt_singular;
  cplx S = quad_contour(f, ComplexPath::segment(x0, 0.0), 1e-14, o).value;
  if (x != 0.0) S += quad_contour(f, ComplexPath::segment(0.0, x), 1e-14).value;
  const cplx w = sqrt_V(x, tp);
  const cplx V = potential(x, p);
  return {-std::log(quartic_root_V(x, tp)) - S / p.h,
          -w / p.h - potential_derivative(x, p) / (4.0 * V)};
}

OdeSample GluedSolution::evaluate(double t) const {
  const double Ll = left.path().length();
  if (t <= Ll) {
    OdeSample s = left.evaluate(std::max(t, 0.0));
    s.value *= left_factor;
    s.derivative *= left_factor;
    s.log_scale += left_log_factor;
    s.s = t;
    return s;
  }
  OdeSample s = right.evaluate(std::max(0.0, length() - t));
  s.s = t;
  return s;
}

double GluedSolution::max_log_abs_value() const {
  return std::max(left.max_log_abs_value() + std::log(std::abs(left_factor)) + left_log_factor,
                  right.max_log_abs_value());
}

PhysicalSolve solve_physical(double alpha, cplx seed, const ShootingConfig& cfg) {
  const double X = cfg.x_physical;
  Operator op{alpha, seed, 1.0};
  const double spacing = std::max(0.5, 0.25 * std::abs(seed) / 3.0);
  const auto r = newton(op, ComplexPath::segment(-X, 0.0), ComplexPath::segment(X, 0.0), seed,
                        spacing, cfg);
  return {r.mu, r.residual, r.iterations, r.converged};
}

EigenRecord solve_eigenvalue(int n, double alpha, const ShootingConfig& cfg, std::optional<cplx> seed) {
  if (n < 1) throw DomainError("solve_eigenvalue: n >= 1");
  if (!(cfg.x_max >= 4.0)) throw DomainError("solve_eigenvalue: x_max must be at least 4");
  EigenRecord rec;
  rec.n = n;
  rec.alpha = alpha;
  rec.config = cfg;

  cplx lambda = seed ? *seed : cplx(bs_lambda(n, alpha));
  const double rel_spacing = 0.25 * 1.2 / (n + 0.5);

  if (n <= cfg.physical_max_n) {
    rec.mode = "physical_real_axis";
    Operator op{alpha, lambda, 1.0};
    const double X = cfg.x_physical;
    const auto r = newton(op, ComplexPath::segment(-X, 0.0), ComplexPath::segment(X, 0.0), lambda,
                          rel_spacing * std::abs(lambda), cfg);
    if (!r.converged) fail("Newton did not converge", n, alpha, r.mu);
    lambda = r.mu;
    rec.match_residual = r.residual;
    rec.iterations = r.iterations;
  } else {
    rec.mode = "semiclassical_contour";
    for (int stage = 0; stage < 2; ++stage) {
      const double h0 = std::pow(lambda.real(), -5.0 / 6.0);
      DiagramOptions dopt;
      dopt.eps_trunc = cfg.eps_trunc;
      dopt.x_max = cfg.x_max;
      dopt.unbounded_lines = false;
      dopt.tube_eps = INFINITY;
      const auto dg = build_diagram({alpha, h0}, dopt);
      const auto& L = dg.contour_L;
      const double s_m = 0.5 * (L.arc_at(dg.contour_ell_f_begin) + L.arc_at(dg.contour_ell_f_end));
      Operator op{alpha * std::pow(h0, 0.8), 0.0, h0};
      const cplx mu0 = lambda * std::pow(h0, 1.2);
      const auto r = newton(op, L.slice(0.0, s_m), L.slice(s_m, L.length()).reversed(), mu0,
                            rel_spacing * std::abs(mu0), cfg);
      if (!r.converged) fail("Newton did not converge", n, alpha, r.mu * std::pow(h0, -1.2));
      lambda = r.mu * std::pow(h0, -1.2);
      rec.match_residual = r.residual;
      rec.iterations += r.iterations;
    }
  }

  // Index check against neighbouring Bohr-Sommerfeld levels.
  if (!seed) {
    try {
      const double own = std::abs(lambda - bs_lambda(n, alpha));
      for (int m : {n - 1, n + 1}) {
        if (m < 1) continue;
        if (std::abs(lambda - bs_lambda(m, alpha)) < own) fail("index mismatch", n, alpha, lambda);
      }
    } catch (const SolverError& e) {
      if (std::string(e.what()).find("index mismatch") != std::string::npos) throw;
    }
  }

  rec.lambda = lambda;
  if (!(lambda.real() > 0.0)) fail("non-positive real part", n, alpha, lambda);
  rec.h = std::pow(std::abs(lambda), -5.0 / 6.0);
  rec.mu = std::abs(lambda) * std::pow(rec.h, 1.2);

  rec.samples_real = sample_real_line(rec, cfg.tol_ode);
  const double mx = rec.samples_real.max_log_abs_value();
  const auto end_log = [](const OdeSample& s) { return std::log(std::abs(s.value)) + s.log_scale; };
  rec.decay_ratio = std::exp(std::max(end_log(rec.samples_real.right.front()),
                                      end_log(rec.samples_real.left.front()) +
                                          std::log(std::abs(rec.samples_real.left_factor)) +
                                          rec.samples_real.left_log_factor) -
                             mx);

  if (cfg.sample_contour) {
    DiagramOptions dopt;
    dopt.eps_trunc = cfg.eps_trunc;
    dopt.x_max = cfg.x_max;
    dopt.unbounded_lines = false;
    dopt.tube_eps = INFINITY;
    const auto dg = build_diagram({alpha, rec.h}, dopt);
    rec.contour = dg.contour_L;
    rec.contour_ell_f_begin = rec.contour.arc_at(dg.contour_ell_f_begin);
    rec.contour_ell_f_end = rec.contour.arc_at(dg.contour_ell_f_end);
    rec.contour_match_arc = 0.5 * (rec.contour_ell_f_begin + rec.contour_ell_f_end);
    rec.samples_contour = sample_on_contour(rec, rec.contour, rec.contour_match_arc);
  }
  return rec;
}

GluedSolution sample_real_line(const EigenRecord& rec, double tol) {
  const ModelParams p{rec.alpha, rec.h};
  const Operator op = semiclassical_operator(rec);
  const double X = rec.config.x_max;
  const WkbData wr = decaying_initial_data(X, p, Side::plus);
  const WkbData wl = decaying_initial_data(-X, p, Side::minus);
  const cplx pr = std::exp(I * wr.log_value.imag());
  const cplx pl = std::exp(I * wl.log_value.imag());
  auto right = shoot_samples(op, ComplexPath::segment(X, 0.0), pr, pr * wr.log_derivative,
                             wr.log_value.real(), tol);
  auto left = shoot_samples(op, ComplexPath::segment(-X, 0.0), pl, pl * wl.log_derivative,
                            wl.log_value.real(), tol);
  return glue(std::move(left), std::move(right));
}

GluedSolution sample_on_contour(const EigenRecord& rec, const ComplexPath& contour,
                                std::optional<double> match_arc, std::optional<double> tol) {
  const double tol_ode = tol.value_or(rec.config.tol_ode);
  const double X = rec.config.x_max;
  const double s_m = match_arc.value_or(0.5 * contour.length());
  if (!(s_m > 0.0 && s_m < contour.length()))
    throw DomainError("sample_on_contour: junction outside the contour");
  const Operator op = semiclassical_operator(rec);
  const auto& R0 = rec.samples_real.right.front();
  const auto& L0 = rec.samples_real.left.front();
  auto with_connector = [](cplx start, const ComplexPath& tail) {
    if (std::abs(start - tail.front()) <= 1e-14 * std::abs(start)) return tail;
    return ComplexPath::segment(start, tail.front()).then(tail);
  };
  const ComplexPath lpath = with_connector(cplx(-X), contour.slice(0.0, s_m));
  const ComplexPath rpath = with_connector(cplx(X), contour.slice(s_m, contour.length()).reversed());
  const cplx lf = rec.samples_real.left_factor;
  auto right = shoot_samples(op, rpath, R0.value, R0.derivative, R0.log_scale, tol_ode);
  auto left = shoot_samples(op, lpath, L0.value * lf, L0.derivative * lf,
                            L0.log_scale + rec.samples_real.left_log_factor, tol_ode);
  // Both shots carry the real-line normalisation; the value mismatch measures consistency.
  const auto& a = left.back();
  const auto& b = right.back();
  const double value_mismatch =
      std::abs(a.value * std::exp(a.log_scale - b.log_scale) - b.value) / std::abs(b.value);
  GluedSolution g = glue(std::move(left), std::move(right));
  g.junction_mismatch = std::max(g.junction_mismatch, value_mismatch);
  return g;
}

std::vector<GridSample> export_real_samples(const EigenRecord& rec, std::size_t m) {
  if (m < 2) throw DomainError("export_real_samples: need at least two points");
  std::vector<GridSample> out;
  const double X = rec.config.x_max;
  const auto& g = rec.samples_real;
  for (std::size_t k = 0; k < m; ++k) {
    const double x = -X + 2.0 * X * double(k) / double(m - 1);
    const auto s = g.evaluate(x + X);
    out.push_back({x, s.true_value(), s.true_derivative()});
  }
  return out;
}

}  // namespace cubicpt
