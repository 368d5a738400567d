// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubicpt/errors.hpp"

namespace cubicpt {

namespace {

bool is_real(cplx z) { return std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z)); }

// Solves from `seed`; nullopt if Newton fails.
std::optional<PhysicalSolve> try_solve(double alpha, cplx seed, const ShootingConfig& cfg) {
  try {
    auto r = solve_physical(alpha, seed, cfg);
    if (r.converged) return r;
  } catch (const Error&) {
  }
  return std::nullopt;
}

// True if the pair near `mean` with spread `spread` is a conjugate pair at alpha.
bool pair_is_complex(double alpha, cplx mean, double spread, const ShootingConfig& cfg, cplx* found) {
  auto r = try_solve(alpha, mean.real() + cplx(0.0, spread), cfg);
  if (r && !is_real(r->lambda) && std::abs(r->lambda.real() - mean.real()) < 4.0 * spread + 1.0) {
    *found = r->lambda;
    return true;
  }
  return false;
}

}  // namespace

SweepResult spectrum_sweep(const std::vector<double>& grid, int n_max, const SweepOptions& opt) {
  if (grid.empty()) throw DomainError("spectrum_sweep: empty alpha grid");
  if (n_max < 1) throw DomainError("spectrum_sweep: n_max must be positive");
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if ((grid[i] - grid[i - 1]) * (grid[i + 1] - grid[i]) <= 0.0)
      throw DomainError("spectrum_sweep: alpha grid must be strictly monotone");
  const auto& cfg = opt.shooting;
  SweepResult out;

  // Start: labelled eigenvalues at the first grid point.
  SweepPoint first{grid[0], {}, {}};
  for (int n = 1; n <= n_max; ++n) {
    ShootingConfig c = cfg;
    c.sample_contour = false;
    const auto rec = solve_eigenvalue(n, grid[0], c);
    first.lambda.push_back(rec.lambda);
    first.residual.push_back(rec.match_residual);
  }
  out.points.push_back(first);
  std::vector<bool> paired(n_max, false);  // label i is the lower member of a conjugate pair

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double a = grid[g];
    const auto& prev = out.points.back();
    const SweepPoint* prev2 = out.points.size() > 1 ? &out.points[out.points.size() - 2] : nullptr;
    SweepPoint cur{a, std::vector<cplx>(n_max), std::vector<double>(n_max)};
    std::vector<cplx> seed(n_max);
    for (int i = 0; i < n_max; ++i) {
      seed[i] = prev.lambda[i];
      if (prev2) {
        const double t = (a - prev.alpha) / (prev.alpha - prev2->alpha);
        seed[i] += t * (prev.lambda[i] - prev2->lambda[i]);
      }
    }
    int i = 0;
    while (i < n_max) {
      if (paired[i]) {
        // Conjugate pair: solve the upper member and check its mirror independently.
        cplx s = seed[i];
        if (s.imag() <= 0.0) s = cplx(s.real(), std::abs(prev.lambda[i].imag()));
        auto r = std::isfinite(s.real()) ? try_solve(a, s, cfg) : std::nullopt;
        if (!r) {
          if (std::isfinite(prev.lambda[i].real())) out.failures.push_back({i + 1, a, "lost a conjugate pair"});
          cur.lambda[i] = cur.lambda[i + 1] = cplx(NAN, NAN);
          cur.residual[i] = cur.residual[i + 1] = NAN;
          i += 2;
          continue;
        }
        const cplx up = r->lambda.imag() >= 0.0 ? r->lambda : std::conj(r->lambda);
        auto m = try_solve(a, std::conj(up), cfg);
        cur.lambda[i] = up;
        cur.residual[i] = r->match_residual;
        cur.lambda[i + 1] = m ? m->lambda : std::conj(up);
        cur.residual[i + 1] = m ? m->match_residual : INFINITY;
        i += 2;
        continue;
      }
      if (!std::isfinite(prev.lambda[i].real())) {
        cur.lambda[i] = cplx(NAN, NAN);
        cur.residual[i] = NAN;
        ++i;
        continue;
      }
      auto r = try_solve(a, seed[i], cfg);
      cur.lambda[i] = r ? r->lambda : cplx(NAN, NAN);
      cur.residual[i] = r ? r->match_residual : INFINITY;
      ++i;
    }

    // Branch detector on consecutive real pairs.
    for (int k = 0; k + 1 < n_max; ++k) {
      if (paired[k] || paired[k + 1] || (k > 0 && paired[k - 1])) continue;
      const bool was_real = is_real(prev.lambda[k]) && is_real(prev.lambda[k + 1]);
      const bool lost = !std::isfinite(cur.residual[k]) || !std::isfinite(cur.residual[k + 1]);
      const bool close = lost || std::abs(cur.lambda[k] - cur.lambda[k + 1]) < opt.approach;
      const bool left_axis = !is_real(cur.lambda[k]) || !is_real(cur.lambda[k + 1]);
      if (!was_real || !(close || left_axis)) continue;
      const cplx mean = 0.5 * (prev.lambda[k] + prev.lambda[k + 1]);
      const double spread = std::max(0.5 * std::abs(prev.lambda[k] - prev.lambda[k + 1]), 1e-2);
      cplx found;
      if (!pair_is_complex(a, mean, spread, cfg, &found)) continue;
      // Bisect alpha between the real and complex regimes.
      double lo = prev.alpha, hi = a;
      while (std::abs(hi - lo) > opt.bracket_tolerance) {
        const double mid = 0.5 * (lo + hi);
        cplx f;
        if (pair_is_complex(mid, mean, spread, cfg, &f)) hi = mid;
        else lo = mid;
      }
      out.events.push_back({k + 1, lo, hi, mean});
      paired[k] = true;
      const cplx up = found.imag() >= 0.0 ? found : std::conj(found);
      auto u = try_solve(a, up, cfg);
      cur.lambda[k] = u ? u->lambda : up;
      cur.residual[k] = u ? u->match_residual : INFINITY;
      auto m = try_solve(a, std::conj(up), cfg);
      cur.lambda[k + 1] = m ? m->lambda : std::conj(up);
      cur.residual[k + 1] = m ? m->match_residual : INFINITY;
    }
    for (int k = 0; k < n_max; ++k)
      if (!std::isfinite(cur.residual[k]) && std::isfinite(prev.lambda[k].real())) {
        out.failures.push_back({k + 1, a, "continuation failed"});
        cur.lambda[k] = cplx(NAN, NAN);
      }
    out.points.push_back(std::move(cur));
  }
  return out;
}

}  // namespace cubicpt
