// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cubicpt/model.hpp"
#include "cubicpt/numkit/complex_path.hpp"
#include "cubicpt/numkit/ode.hpp"

namespace cubicpt {

struct ShootingConfig {
  double x_max = 12.0;  // real-line truncation, semiclassical coordinates
  double tol_ode = 1e-12;
  double tol_match = 1e-10;
  int newton_max_iter = 40;
  std::size_t mesh_out = 0;  // uniform export grid on the real line; 0 keeps the integrator samples
  double eps_trunc = 1e-18;  // truncation of the anti-Stokes ends of the contour
  double x_physical = 8.0;   // shooting half-width for the physical-coordinate mode
  int physical_max_n = 2;    // labels up to this use physical coordinates on the real axis
  bool sample_contour = true;
};

enum class Side { plus, minus };

// WKB data V^{-1/4} exp(-S/h), S = int_{x_side}^x sqrt(V), in logarithmic form.
struct WkbData {
  cplx log_value;
  cplx log_derivative;  // -sqrt(V)/h - V'/(4V)
};

WkbData decaying_initial_data(cplx x, const ModelParams& p, Side side);

// Eigenfunction assembled from two shots that meet at a junction. `left` runs from the start of the
// path to the junction, `right` from the end of the path back to the junction. Left values are
// multiplied by left_factor * exp(left_log_factor).
struct GluedSolution {
  OdeSolution left;
  OdeSolution right;
  cplx left_factor = 1.0;
  double left_log_factor = 0.0;
  double junction_mismatch = 0.0;  // relative mismatch of derivatives (values are matched)

  double length() const { return left.path().length() + right.path().length(); }
  // Value at arc length t from the start of the combined path.
  OdeSample evaluate(double t) const;
  double max_log_abs_value() const;
  bool flagged() const { return left.flagged() || right.flagged(); }
};

struct EigenRecord {
  int n = 0;
  double alpha = 0.0;
  cplx lambda;
  double h = 0.0;
  double mu = 1.0;  // lambda h^{6/5}, the spectral parameter of the semiclassical problem
  double match_residual = 0.0;
  int iterations = 0;
  std::string mode;  // "physical_real_axis" or "semiclassical_contour"
  ShootingConfig config;
  GluedSolution samples_real;
  std::optional<GluedSolution> samples_contour;
  ComplexPath contour;  // L_alpha(h) used for samples_contour
  double contour_match_arc = 0.0;   // junction of samples_contour, arc length along contour
  double contour_ell_f_begin = 0.0;  // arc length of x_- on contour
  double contour_ell_f_end = 0.0;    // arc length of x_+ on contour
  std::string normalization = "wkb_anchor";
  double decay_ratio = 0.0;  // max(|psi(+-x_max)|) / max|psi|
};

// Eigenvalue with label n >= 1 (ordered by real part). A seed replaces the Bohr-Sommerfeld one.
// Throws SolverError on divergence or index mismatch.
EigenRecord solve_eigenvalue(int n, double alpha, const ShootingConfig& cfg = {},
                             std::optional<cplx> seed = std::nullopt);

// Newton on lambda in physical coordinates on the real axis from a seed; no index bookkeeping.
struct PhysicalSolve {
  cplx lambda;
  double match_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};
PhysicalSolve solve_physical(double alpha, cplx seed, const ShootingConfig& cfg = {});

// Continues the eigenfunction of `rec` along `contour` (endpoints in the decay sectors). Both ends are
// connected to the real line at -+x_max and carry the real-line normalisation; match_arc selects the
// junction (default: midpoint of the contour).
GluedSolution sample_on_contour(const EigenRecord& rec, const ComplexPath& contour,
                                std::optional<double> match_arc = std::nullopt,
                                std::optional<double> tol = std::nullopt);

// Real-line eigenfunction on [-x_max, x_max] at ODE tolerance `tol`, anchored at +x_max.
GluedSolution sample_real_line(const EigenRecord& rec, double tol);

// Real-line samples on a uniform grid of m points in [-x_max, x_max]: (x, psi, dpsi).
struct GridSample {
  double x;
  cplx value;
  cplx derivative;
};
std::vector<GridSample> export_real_samples(const EigenRecord& rec, std::size_t m);

}  // namespace cubicpt
