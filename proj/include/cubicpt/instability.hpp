// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubicpt/eigensolver.hpp"

namespace cubicpt {

enum class Precision { double_, double_double };

// Integrals of psi^2 dz and |psi|^2 |dz| along a glued solution, in the stored normalisation.
struct PairingIntegrals {
  cplx pairing;             // int psi^2 dz
  double norm_sq = 0.0;     // int |psi|^2 |dz|
  double rule_error = 0.0;  // sum of |Kronrod - Gauss| over steps
  double rounding = 0.0;    // eps * int |psi|^2 |dz|
  std::size_t intervals = 0;
};

// Per-step Gauss-Kronrod quadrature of psi^2 with dense evaluation; values are multiplied by `scale`.
PairingIntegrals pairing_integrals(const GluedSolution& g, Precision precision = Precision::double_,
                                   cplx scale = 1.0);

struct KappaOptions {
  Precision precision = Precision::double_;
  double loose_factor = 10.0;  // ODE error estimate from a rerun at tol_ode * loose_factor
  bool contour = true;         // also compute the denominator along the contour
  cplx scale = 1.0;            // rescales the eigenfunction before integration
  double max_relative_error = 0.1;  // accepted error budget relative to |self_pairing|
};

struct InstabilityRecord {
  int n = 0;
  double alpha = 0.0;
  cplx lambda;
  double h = 0.0;
  double norm_sq = 0.0;  // int |psi|^2 on the real line, semiclassical variable
  cplx self_pairing;     // int psi^2 on the real line
  cplx self_pairing_contour;
  double kappa = 0.0;
  double kappa_contour = 0.0;
  double log_kappa = 0.0;
  double quadrature_error = 0.0;  // absolute error budget of self_pairing
  double quadrature_error_contour = 0.0;
  double noise_floor = 0.0;  // rounding level of self_pairing
  std::string precision = "double";
};

// kappa = ||psi||^2 / |int psi^2| for the eigenfunction of `rec`. Throws PrecisionError when the
// denominator is not resolved (budget above max_relative_error |self_pairing| or below 100x the
// noise floor).
InstabilityRecord kappa(const EigenRecord& rec, const KappaOptions& opt = {});

struct GrowthFit {
  double alpha = 0.0;
  int n_min = 0;
  int n_max = 0;
  double slope = 0.0;
  double alpha_coeff = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  std::vector<double> normalized;  // log kappa_n / n
  std::vector<double> cauchy;      // log kappa_{n+1} - log kappa_n for consecutive n
};

// Least squares for log kappa_n = slope n - log(n)/4 + offset.
GrowthFit growth_fit(const std::vector<InstabilityRecord>& records);

// Joint fit over two alpha values at matched n: common slope, separate offsets and the term
// alpha_coeff * alpha * n^{1/5}. The returned fit carries the offset of `b`.
GrowthFit growth_fit_joint(const std::vector<InstabilityRecord>& a, const std::vector<InstabilityRecord>& b);

// Least squares for y_k = sum_j design[k][j] beta_j; throws NumericError when rank deficient.
std::vector<double> least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& y,
                                  double* residual_rms = nullptr);

struct DenominatorPoint {
  int n = 0;
  cplx d;                       // int_L psi_1^2 dz
  double relative_change = 0.0;  // |d_n - d_{n-1}| / |d_{n-1}| (0 for the first)
};

struct DenominatorSeries {
  std::vector<DenominatorPoint> points;
  double max_min_ratio = 0.0;
  bool decreasing_changes = false;  // for n >= 6
  bool nonzero = false;
};

DenominatorSeries denominator_constancy(const std::vector<InstabilityRecord>& records);

struct Rectangle {
  double re_min, re_max, im_min, im_max;
};

struct WkbReport {
  double deviation = 0.0;  // sup |psi / psi_wkb - 1|
  double mean_deviation = 0.0;
  std::size_t points = 0;
  double tube_distance = 0.0;  // smallest distance of the grid to the ell_f and ell_i tubes
};

// Compares the eigenfunction with the leading WKB term on a grid of the rectangle.
// Throws GeometryError when the rectangle meets the tube of width eps around ell_f or ell_i.
WkbReport wkb_validate(const EigenRecord& rec, const Rectangle& region, std::size_t grid = 8,
                       double eps = 0.1);

struct FarFieldReport {
  double variation = 0.0;  // (max - min) / mean of |psi| |x|^{3/4} exp(Re S / h)
  std::vector<double> amplitude;
};

FarFieldReport far_field_amplitude(const EigenRecord& rec, double x_lo = 8.0, double x_hi = 12.0,
                                   std::size_t points = 9);

struct AiryReport {
  cplx ratio_plus;   // mean of psi / [(zeta/V)^{1/4} Ai(zeta/h^{2/3})] * h^{1/6} / (2 sqrt pi)
  cplx ratio_minus;
  double spread_plus = 0.0;  // max deviation of the sampled ratios from their mean
  double spread_minus = 0.0;
  double modulus_mismatch = 0.0;  // ||r-| - |r+|| / |r+|
  double phase = 0.0;             // arg(r- / r+) in (-pi, pi]
  double expected_phase = 0.0;    // (n - 1) pi + pi / 2 reduced to (-pi, pi]
  double phase_error = 0.0;
  std::size_t points_plus = 0;
  std::size_t points_minus = 0;
};

// Airy model near x_+ and x_- on the anti-Stokes arms at |zeta|/h^{2/3} in [1, 4].
AiryReport airy_connection_check(const EigenRecord& rec);

}  // namespace cubicpt
