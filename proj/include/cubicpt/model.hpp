// SPDX-License-Identifier: Apache-2.0
// Semiclassical form of the cubic oscillator: V(x) = i x^3 + i alpha h^{4/5} x - 1.
#pragma once

#include <array>
#include <complex>

#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt {

struct ModelParams {
  double alpha = 0.0;
  double h = 0.0;  // semiclassical parameter, h = lambda^{-5/6}; h = 0 gives the limit potential

  double shift() const;  // alpha h^{4/5}
};

enum class TurningLabel { plus = 0, minus = 1, imag = 2 };

// Zeros of V labelled by continuation from h = 0, where they are
// e^{-i pi/6} (plus), e^{-5 i pi/6} (minus) and i (imag).
struct TurningPoints {
  cplx plus, minus, imag;

  cplx operator[](TurningLabel l) const;
  std::array<cplx, 3> as_array() const { return {plus, minus, imag}; }
};

// Value of alpha h^{4/5} at which x_plus and x_minus coalesce on the negative imaginary axis.
double collision_shift();

cplx potential(cplx x, const ModelParams& p);
cplx potential_derivative(cplx x, const ModelParams& p);

// Throws GeometryError when two turning points are closer than 1e-8, DomainError for h < 0.
TurningPoints turning_points(const ModelParams& p);

// Distance from x to the union of the radial cuts {x_s (1 + t), t > 0}.
double cut_distance(cplx x, const TurningPoints& tp);

// Branch of sqrt(V) on the plane cut along the outward rays through the turning points,
// with sqrt(V(0)) = i. Evaluated as i * prod_s sqrt(1 - x/x_s) (principal roots).
// Throws GeometryError within 1e-12 of a cut.
cplx sqrt_V(cplx x, const TurningPoints& tp);
cplx sqrt_V(cplx x, const ModelParams& p);

// Branch of V^{1/4} on the same cut plane with (V^{1/4})^2 = sqrt_V.
cplx quartic_root_V(cplx x, const TurningPoints& tp);

// Semiclassical scaling h = lambda^{-5/6}, x_phys = h^{-2/5} x_sc.
cplx scale(cplx lambda);
double scale(double lambda);
double unscale(double h);
double x_physical(double x_sc, double h);
double x_semiclassical(double x_phys, double h);

}  // namespace cubicpt
