// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubicpt/errors.hpp"
#include "cubicpt/semiclassics.hpp"

namespace cubicpt {

TridiagonalLu::TridiagonalLu(std::vector<cplx> sub, std::vector<cplx> diag, std::vector<cplx> super) {
  const std::size_t n = diag.size();
  if (n == 0 || sub.size() + 1 != n || super.size() + 1 != n)
    throw DomainError("TridiagonalLu: inconsistent band sizes");
  d_ = std::move(diag);
  u1_ = std::move(super);
  u1_.push_back(0.0);
  u2_.assign(n, 0.0);
  l_.assign(n, 0.0);
  pivot_.resize(n);
  for (std::size_t i = 0; i < n; ++i) pivot_[i] = i;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d_[i]) >= std::abs(sub[i])) {
      if (d_[i] == cplx(0.0)) throw NumericError("TridiagonalLu: singular matrix");
      l_[i] = sub[i] / d_[i];
      d_[i + 1] -= l_[i] * u1_[i];
    } else {
      // Swap rows i and i+1.
      pivot_[i] = i + 1;
      l_[i] = d_[i] / sub[i];
      d_[i] = sub[i];
      const cplx t = u1_[i];
      u1_[i] = d_[i + 1];
      d_[i + 1] = t - l_[i] * d_[i + 1];
      if (i + 2 < n) {
        u2_[i] = u1_[i + 1];
        u1_[i + 1] = -l_[i] * u2_[i];
      }
    }
  }
  if (d_[n - 1] == cplx(0.0)) throw NumericError("TridiagonalLu: singular matrix");
}

std::vector<cplx> TridiagonalLu::solve(std::vector<cplx> b) const {
  const std::size_t n = d_.size();
  if (b.size() != n) throw DomainError("TridiagonalLu::solve: size mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pivot_[i] != i) std::swap(b[i], b[i + 1]);
    b[i + 1] -= l_[i] * b[i];
  }
  b[n - 1] /= d_[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - u1_[n - 2] * b[n - 1]) / d_[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) b[k] = (b[k] - u1_[k] * b[k + 1] - u2_[k] * b[k + 2]) / d_[k];
  return b;
}

namespace {

struct Grid {
  double dx;
  std::vector<cplx> potential;  // interior points
};

Grid make_grid(double alpha, int N, double L) {
  Grid g;
  g.dx = 2.0 * L / N;
  g.potential.resize(N - 1);
  for (int j = 1; j < N; ++j) {
    const double x = -L + j * g.dx;
    g.potential[j - 1] = cplx(0.0, x * x * x + alpha * x);
  }
  return g;
}

std::vector<cplx> apply_operator(const Grid& g, const std::vector<cplx>& v) {
  const std::size_t n = v.size();
  const double c = 1.0 / (g.dx * g.dx);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = (2.0 * c + g.potential[i]) * v[i];
    if (i > 0) s -= c * v[i - 1];
    if (i + 1 < n) s -= c * v[i + 1];
    out[i] = s;
  }
  return out;
}

double norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

TridiagonalLu factor(const Grid& g, cplx shift) {
  const std::size_t n = g.potential.size();
  const double c = 1.0 / (g.dx * g.dx);
  std::vector<cplx> diag(n), off(n - 1, -c);
  for (std::size_t i = 0; i < n; ++i) diag[i] = 2.0 * c + g.potential[i] - shift;
  return TridiagonalLu(off, diag, off);
}

}  // namespace

FdEigenpair fd_eigenpair(double alpha, int N, double L, cplx shift) {
  if (N < 8 || N > 8000) throw DomainError("fd_eigenpair: N must lie in [8, 8000]");
  if (!(L > 0.0)) throw DomainError("fd_eigenpair: L must be positive");
  const Grid g = make_grid(alpha, N, L);
  const std::size_t n = g.potential.size();
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-0.5 * std::pow((-L + (i + 1) * g.dx) / L * 4.0, 2));
  FdEigenpair out{shift, INFINITY, 0};
  cplx sigma = shift;
  TridiagonalLu lu = factor(g, sigma);
  for (int it = 1; it <= 60; ++it) {
    out.iterations = it;
    v = lu.solve(v);
    const double nv = norm(v);
    for (auto& x : v) x /= nv;
    const auto Av = apply_operator(g, v);
    // Complex-symmetric Rayleigh quotient v^T A v / v^T v.
    cplx num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * Av[i];
      den += v[i] * v[i];
    }
    out.lambda = num / den;
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::norm(Av[i] - out.lambda * v[i]);
    out.residual = std::sqrt(r);
    if (out.residual <= 1e-8 * std::max(1.0, std::abs(out.lambda))) return out;
    // Rayleigh-quotient shift once the vector has settled near the target.
    if (it >= 3 && std::abs(out.lambda - sigma) < 0.25 * std::abs(shift - sigma) + 1e-3 * std::abs(shift) + 0.5) {
      sigma = out.lambda;
      lu = factor(g, sigma);
    }
  }
  std::ostringstream m;
  m << "fd_eigenpair: inverse iteration did not converge from shift " << shift << " (residual "
    << out.residual << ")";
  throw SolverError(m.str());
}

FdResult fd_oracle(double alpha, int N, double L, int k, std::optional<std::vector<cplx>> seeds) {
  if (k < 1) throw DomainError("fd_oracle: k must be positive");
  if (N % 2 != 0) throw DomainError("fd_oracle: N must be even");
  std::vector<cplx> s;
  if (seeds) {
    if (static_cast<int>(seeds->size()) < k) throw DomainError("fd_oracle: fewer seeds than k");
    s.assign(seeds->begin(), seeds->begin() + k);
  } else {
    for (int n = 1; n <= k; ++n) s.push_back(bs_lambda(n, alpha));
  }
  FdResult r;
  r.n_intervals = N;
  r.half_width = L;
  for (int i = 0; i < k; ++i) {
    r.fine.push_back(fd_eigenpair(alpha, N, L, s[i]));
    r.coarse.push_back(fd_eigenpair(alpha, N / 2, L, r.fine.back().lambda));
    r.lambda.push_back((4.0 * r.fine.back().lambda - r.coarse.back().lambda) / 3.0);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(r.fine[i].lambda - r.fine[j].lambda) < 1e-6) r.collisions.emplace_back(i, j);
  return r;
}

}  // namespace cubicpt
