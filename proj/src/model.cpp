// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cubicpt/errors.hpp"

namespace cubicpt {

namespace {

const cplx I(0.0, 1.0);

// Roots of x^3 + s x + i = 0, closed form followed by two Newton steps.
std::array<cplx, 3> depressed_roots(double s) {
  const cplx q = I;
  const cplx d = std::sqrt(q * q / 4.0 + cplx(s * s * s / 27.0));
  cplx u3 = -q / 2.0 + d;
  const cplx alt = -q / 2.0 - d;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;
  const cplx u = std::pow(u3, 1.0 / 3.0);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::array<cplx, 3> r;
  cplx uk = u;
  for (int k = 0; k < 3; ++k) {
    r[k] = uk - s / (3.0 * uk);
    uk *= w;
  }
  for (auto& x : r) {
    for (int it = 0; it < 2; ++it) {
      const cplx f = x * x * x + s * x + q;
      const cplx fp = 3.0 * x * x + s;
      if (std::abs(fp) > 0.0) x -= f / fp;
    }
  }
  return r;
}

double min_separation(const std::array<cplx, 3>& r) {
  return std::min({std::abs(r[0] - r[1]), std::abs(r[0] - r[2]), std::abs(r[1] - r[2])});
}

// Orders `next` to follow `prev`. Returns the largest displacement of the best assignment.
double match(const std::array<cplx, 3>& prev, std::array<cplx, 3>& next) {
  std::array<int, 3> perm{0, 1, 2}, best{0, 1, 2};
  double best_cost = INFINITY;
  do {
    double c = 0.0;
    for (int k = 0; k < 3; ++k) c = std::max(c, std::abs(prev[k] - next[perm[k]]));
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  next = {next[best[0]], next[best[1]], next[best[2]]};
  return best_cost;
}

std::array<cplx, 3> continue_roots(const std::array<cplx, 3>& prev, double s0, double s1,
                                   int depth) {
  auto next = depressed_roots(s1);
  const double moved = match(prev, next);
  if (moved < 0.3 * std::min(min_separation(prev), min_separation(next)) || depth > 40)
    return next;
  const double mid = 0.5 * (s0 + s1);
  return continue_roots(continue_roots(prev, s0, mid, depth + 1), mid, s1, depth + 1);
}

}  // namespace

double ModelParams::shift() const { return alpha * std::pow(h, 0.8); }

cplx TurningPoints::operator[](TurningLabel l) const {
  switch (l) {
    case TurningLabel::plus: return plus;
    case TurningLabel::minus: return minus;
    default: return imag;
  }
}

double collision_shift() { return std::cbrt(27.0 / 4.0); }

cplx potential(cplx x, const ModelParams& p) { return I * x * (x * x + p.shift()) - 1.0; }

cplx potential_derivative(cplx x, const ModelParams& p) { return I * (3.0 * x * x + p.shift()); }

TurningPoints turning_points(const ModelParams& p) {
  if (!(p.h >= 0.0) || !std::isfinite(p.alpha)) throw DomainError("turning_points: need h >= 0");
  const double s = p.shift();
  if (s >= collision_shift() * (1.0 - 1e-12))
    throw GeometryError("turning_points: alpha h^{4/5} at or beyond the coalescence value");
  std::array<cplx, 3> r = {std::polar(1.0, -std::numbers::pi / 6.0),
                           std::polar(1.0, -5.0 * std::numbers::pi / 6.0), I};
  if (s != 0.0) {
    double s_prev = 0.0;
    for (int k = 0; k <= 16; ++k) {
      const double sk = s * std::ldexp(1.0, k - 16);
      r = continue_roots(r, s_prev, sk, 0);
      s_prev = sk;
    }
  }
  if (min_separation(r) < 1e-8) throw GeometryError("turning_points: turning points collide");
  return {r[0], r[1], r[2]};
}

double cut_distance(cplx x, const TurningPoints& tp) {
  double d = INFINITY;
  for (cplx t : tp.as_array()) {
    const double a = ((x - t) * std::conj(t)).real() / std::norm(t);
    d = std::min(d, a > 0.0 ? std::abs(x - t * (1.0 + a)) : std::abs(x - t));
  }
  return d;
}

namespace {

void check_cuts(cplx x, const TurningPoints& tp) {
  for (cplx t : tp.as_array()) {
    const double a = ((x - t) * std::conj(t)).real() / std::norm(t);
    if (a > 0.0 && std::abs(x - t * (1.0 + a)) < 1e-12 * std::max(1.0, std::abs(x)))
      throw GeometryError("sqrt_V: point on a branch cut");
  }
}

}  // namespace

cplx sqrt_V(cplx x, const TurningPoints& tp) {
  check_cuts(x, tp);
  return I * std::sqrt(1.0 - x / tp.plus) * std::sqrt(1.0 - x / tp.minus) *
         std::sqrt(1.0 - x / tp.imag);
}

cplx sqrt_V(cplx x, const ModelParams& p) { return sqrt_V(x, turning_points(p)); }

cplx quartic_root_V(cplx x, const TurningPoints& tp) {
  check_cuts(x, tp);
  return std::polar(1.0, std::numbers::pi / 4.0) * std::pow(1.0 - x / tp.plus, 0.25) *
         std::pow(1.0 - x / tp.minus, 0.25) * std::pow(1.0 - x / tp.imag, 0.25);
}

cplx scale(cplx lambda) {
  if (!(lambda.real() > 0.0)) throw DomainError("scale: Re lambda must be positive");
  return std::pow(lambda, -5.0 / 6.0);
}

double scale(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("scale: lambda must be positive");
  return std::pow(lambda, -5.0 / 6.0);
}

double unscale(double h) {
  if (!(h > 0.0)) throw DomainError("unscale: h must be positive");
  return std::pow(h, -1.2);
}

double x_physical(double x_sc, double h) { return std::pow(h, -0.4) * x_sc; }
double x_semiclassical(double x_phys, double h) { return std::pow(h, 0.4) * x_phys; }

}  // namespace cubicpt
