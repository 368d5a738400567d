// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cubicpt/eigensolver.hpp"

namespace cubicpt {

struct SweepPoint {
  double alpha = 0.0;
  std::vector<cplx> lambda;  // labels 1..n_max; a conjugate pair keeps Im > 0 on the lower label
  std::vector<double> residual;
};

// Two consecutive real eigenvalues meeting and leaving the real axis as a conjugate pair.
struct BranchEvent {
  int label = 0;  // the pair (label, label + 1)
  double alpha_real = 0.0;     // last alpha with a real pair
  double alpha_complex = 0.0;  // first alpha with a conjugate pair
  cplx lambda = 0.0;           // pair mean at the bracket
};

struct ContinuationFailure {
  int label = 0;
  double alpha = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<BranchEvent> events;
  std::vector<ContinuationFailure> failures;  // a lost curve is NaN from its failure onwards
};

struct SweepOptions {
  ShootingConfig shooting;
  double approach = 1e-3;           // curves closer than this trigger the branch detector
  double bracket_tolerance = 1e-6;  // bisection width in alpha
};

// Eigenvalue curves along a monotone alpha grid by continuation in physical coordinates.
SweepResult spectrum_sweep(const std::vector<double>& alpha_grid, int n_max, const SweepOptions& opt = {});

}  // namespace cubicpt
