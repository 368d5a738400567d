// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/numkit/ode.hpp"

#include <algorithm>
#include <cmath>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/detail/dp54.hpp"

namespace cubicpt {

namespace {

struct Ode2Rhs {
  const Coefficient& q;
  detail::State<2> operator()(cplx z, const detail::State<2>& y) const {
    return {y[1], q(z) * y[0]};
  }
  double weight(cplx z, const detail::State<2>& y) const {
    const double k = 1.0 / (1.0 + std::sqrt(std::abs(q(z))));
    return std::hypot(std::abs(y[0]), k * std::abs(y[1]));
  }
};

}  // namespace

OdeSolution::OdeSolution(Coefficient q, ComplexPath path, std::vector<OdeSample> samples,
                         double tol, double error_estimate, std::size_t rejected)
    : q_(std::move(q)),
      path_(std::move(path)),
      samples_(std::move(samples)),
      tol_(tol),
      error_estimate_(error_estimate),
      rejected_(rejected) {}

std::size_t OdeSolution::step_index(double s) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                             [](double v, const OdeSample& a) { return v < a.s; });
  if (it == samples_.begin()) return 0;
  std::size_t k = static_cast<std::size_t>(it - samples_.begin()) - 1;
  return std::min(k, samples_.size() - 2);
}

OdeSample OdeSolution::evaluate(double s) const {
  if (s < 0.0 || s > path_.length() * (1.0 + 1e-14))
    throw DomainError("OdeSolution::evaluate: outside the path");
  const std::size_t k = step_index(s);
  const OdeSample& a = samples_[k];
  const double ds = s - a.s;
  if (ds == 0.0) return a;
  const std::size_t seg = path_.segment_index(0.5 * (a.s + samples_[k + 1].s));
  const cplx H = ds * path_.tangent(seg);
  Ode2Rhs rhs{q_};
  detail::Dp54<2, Ode2Rhs> rk{rhs};
  const auto y = rk.advance(a.z, H, {a.value, a.derivative});
  return OdeSample{s, a.z + H, y[0], y[1], a.log_scale};
}

double OdeSolution::max_log_abs_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& p : samples_)
    if (p.value != cplx(0.0)) m = std::max(m, std::log(std::abs(p.value)) + p.log_scale);
  return m;
}

OdeSolution integrate_ode2(const Coefficient& q, const ComplexPath& path, cplx v0, cplx d0,
                           double tol, const OdeOptions& options, double log_scale0) {
  if (!(tol >= 1e-14 && tol <= 1e-3)) throw DomainError("integrate_ode2: tol outside [1e-14, 1e-3]");
  if (path.segment_count() == 0) throw DomainError("integrate_ode2: empty path");
  if (!std::isfinite(std::abs(v0)) || !std::isfinite(std::abs(d0)))
    throw DomainError("integrate_ode2: non-finite initial data");
  Ode2Rhs rhs{q};
  std::vector<OdeSample> samples;
  detail::DriveStats stats;
  detail::DriveLimits lim{options.initial_step, options.max_step, options.max_steps};
  double log_scale = log_scale0;
  detail::drive<2>(rhs, path, detail::State<2>{v0, d0}, log_scale, tol, lim, stats,
                   [&](double s, cplx z, const detail::State<2>& y, double ls) {
                     samples.push_back(OdeSample{s, z, y[0], y[1], ls});
                   });
  return OdeSolution(q, path, std::move(samples), tol, std::sqrt(stats.error_sq_sum),
                     stats.rejected);
}

}  // namespace cubicpt
