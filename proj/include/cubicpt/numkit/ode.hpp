// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt {

using Coefficient = std::function<cplx(cplx)>;

// Solution value at arc length s. The true values are value*exp(log_scale), derivative*exp(log_scale).
struct OdeSample {
  double s = 0.0;
  cplx z;
  cplx value;
  cplx derivative;
  double log_scale = 0.0;

  cplx true_value() const { return value * std::exp(log_scale); }
  cplx true_derivative() const { return derivative * std::exp(log_scale); }
};

struct OdeOptions {
  double initial_step = 0.0;  // 0 picks a step from the initial data
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

// Sampled solution of w'' = q(z) w along a path.
class OdeSolution {
 public:
  OdeSolution() = default;
  OdeSolution(Coefficient q, ComplexPath path, std::vector<OdeSample> samples, double tol,
              double error_estimate, std::size_t rejected);

  const ComplexPath& path() const { return path_; }
  const std::vector<OdeSample>& samples() const { return samples_; }
  const OdeSample& front() const { return samples_.front(); }
  const OdeSample& back() const { return samples_.back(); }
  double tolerance() const { return tol_; }
  // Root-sum-square of the accepted local error estimates.
  double error_estimate() const { return error_estimate_; }
  bool flagged() const { return error_estimate_ > 10.0 * tol_; }
  std::size_t rejected_steps() const { return rejected_; }
  cplx coefficient(cplx z) const { return q_(z); }

  // Dense evaluation by a single step from the preceding sample.
  OdeSample evaluate(double s) const;
  // Index k of the step [s_k, s_{k+1}] containing s.
  std::size_t step_index(double s) const;
  // Largest log|w| over the samples.
  double max_log_abs_value() const;

 private:
  Coefficient q_;
  ComplexPath path_;
  std::vector<OdeSample> samples_;
  double tol_ = 0.0;
  double error_estimate_ = 0.0;
  std::size_t rejected_ = 0;
};

// Integrates w'' = q(z) w along the path from w(start) = v0*exp(log_scale0),
// w'(start) = d0*exp(log_scale0), with Dormand-Prince 5(4) and PI step control.
// Derivatives are complex derivatives d/dz. tol in [1e-14, 1e-3].
OdeSolution integrate_ode2(const Coefficient& q, const ComplexPath& path, cplx v0, cplx d0,
                           double tol, const OdeOptions& options = {}, double log_scale0 = 0.0);

}  // namespace cubicpt
