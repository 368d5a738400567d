// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "cubicpt/model.hpp"
#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt {

struct ActionConstants {
  double C = 0.0;        // int_0^1 sqrt(1 - t^3) dt, by quadrature
  double C_closed = 0.0;  // 2 sqrt(3) pi^{3/2} / (15 Gamma(2/3) Gamma(5/6))
  double r = 0.0;        // (1/2) int_0^1 t / sqrt(1 - t^3) dt, by quadrature
  double r_closed = 0.0;  // Gamma(2/3) Gamma(5/6) / (2 sqrt(pi))
  double c = 0.0;        // (5/2)^{1/5} pi^{-3/5} Gamma(2/3)^{6/5} Gamma(5/6)^{6/5}
  double c_log = 0.0;    // the same through lgamma
  double growth_rate = 0.0;  // pi / sqrt(3)
  double norm_prefactor = 0.0;  // (sqrt(2)/2) Gamma(1/4)
};

const ActionConstants& constants();

// int_{x_-}^{x_+} sqrt(V) dz along the radial segments x_- -> 0 -> x_+.
cplx action_ellf(const ModelParams& p);
// The same integral along a given path from x_- to x_+ (e.g. a traced finite Stokes line).
cplx action_along(const ModelParams& p, const ComplexPath& path);

// Eigenvalue label n (counting from 1) corresponds to quantum number n + offset.
inline constexpr int kBsIndexOffset = -1;

struct BsSolution {
  int n = 0;  // quantum number in Im action = pi (n + 1/2) h
  double alpha = 0.0;
  double h = 0.0;
  double lambda_bs = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Solves Im action_ellf(alpha, h) = pi (n + 1/2) h for h, n >= 0. Throws SolverError with the
// final bracket when no root is found.
BsSolution bs_solve(int n, double alpha);
// Bohr-Sommerfeld eigenvalue estimate for label >= 1.
double bs_lambda(int label, double alpha, int offset = kBsIndexOffset);
// Two-term expansion h ~ sqrt(3) C / (pi N) - 3^{9/10} alpha r C^{4/5} / (pi^{9/5} N^{9/5}), N = n + 1/2.
double bs_two_term(int n, double alpha);
// Offset in [lo, hi] minimising the largest relative error against (label, lambda) pairs.
int calibrate_bs_offset(const std::vector<std::pair<int, double>>& eigenvalues, double alpha,
                        int lo = -2, int hi = 2);

// log of (sqrt(2)/2) Gamma(1/4) h^{1/4} exp(C/h + alpha r h^{-1/5}); h > 0.
double predict_log_norm_sq(double alpha, double h);
// The value itself; +inf beyond double range.
double predict_norm_sq(double alpha, double h);
// (pi/sqrt 3) n - (1/4) log n + alpha c n^{1/5}, defined up to an additive constant.
double predict_log_kappa(int n, double alpha);

}  // namespace cubicpt
