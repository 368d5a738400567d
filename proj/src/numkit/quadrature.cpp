// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/numkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/summation.hpp"

namespace cubicpt {

GkEstimate gk15(const std::function<cplx(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const cplx fc = g(c);
  cplx k = Gk15::wgk[7] * fc;
  cplx gs = Gk15::wg[3] * fc;
  double ab = Gk15::wgk[7] * std::abs(fc);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = r * Gk15::xgk[j];
    const cplx f1 = g(c - dx);
    const cplx f2 = g(c + dx);
    k += Gk15::wgk[j] * (f1 + f2);
    ab += Gk15::wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gs += Gk15::wg[j / 2] * (f1 + f2);
  }
  return {k * r, gs * r, ab * std::abs(r)};
}

namespace {

// Arc-length map for one elementary interval: s(u) and ds/du.
struct Piece {
  enum Kind { plain, graded_start, graded_end } kind = plain;
  double g = 0.0;  // graded length
  double L = 0.0;  // total length
  std::size_t segment = 0;
  double u0 = 0.0, u1 = 0.0;
};

struct Interval {
  std::size_t piece;
  double a, b;
  cplx value;
  double err;
  double abs_integral;
  bool operator<(const Interval& o) const { return err < o.err; }
};

}  // namespace

QuadResult quad_contour(const std::function<cplx(cplx)>& f, const ComplexPath& path, double tol,
                        const QuadOptions& options) {
  if (!(tol > 0.0)) throw DomainError("quad_contour: tol must be positive");
  const double L = path.length();
  if (!(L > 0.0)) throw DomainError("quad_contour: empty path");
  const bool gs = options.start == Endpoint::sqrt_singular;
  const bool ge = options.end == Endpoint::sqrt_singular;
  const double g = options.graded_fraction * L;
  if (gs && ge && options.graded_fraction > 0.5)
    throw DomainError("quad_contour: graded regions overlap");

  // Breakpoints in arc length: vertices plus graded boundaries.
  std::vector<double> br;
  for (std::size_t i = 0; i < path.vertices().size(); ++i) br.push_back(path.arc_at(i));
  if (gs) br.push_back(g);
  if (ge) br.push_back(L - g);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(), [L](double x, double y) { return y - x <= 1e-15 * L; }),
           br.end());

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double sa = br[i], sb = br[i + 1];
    Piece p;
    p.L = L;
    p.g = g;
    p.segment = path.segment_index(0.5 * (sa + sb));
    if (gs && sb <= g * (1 + 1e-15)) {
      p.kind = Piece::graded_start;
      p.u0 = std::sqrt(sa / g);
      p.u1 = std::sqrt(std::min(sb / g, 1.0));
    } else if (ge && sa >= (L - g) * (1 - 1e-15)) {
      p.kind = Piece::graded_end;
      p.u0 = std::sqrt(std::max((L - sb) / g, 0.0));
      p.u1 = std::sqrt(std::min((L - sa) / g, 1.0));
    } else {
      p.u0 = sa;
      p.u1 = sb;
    }
    pieces.push_back(p);
  }

  std::size_t evals = 0;
  auto integrand = [&](const Piece& p) {
    const cplx v0 = path.vertices()[p.segment];
    const cplx t = path.tangent(p.segment);
    const double s0 = path.arc_at(p.segment);
    return [&, v0, t, s0](double u) -> cplx {
      ++evals;
      double s, jac;
      switch (p.kind) {
        case Piece::graded_start: s = p.g * u * u; jac = 2.0 * p.g * u; break;
        case Piece::graded_end: s = p.L - p.g * u * u; jac = 2.0 * p.g * u; break;
        default: s = u; jac = 1.0;
      }
      const cplx z = v0 + t * (s - s0);
      return f(z) * t * jac;
    };
  };

  std::vector<Interval> heap;
  auto make = [&](std::size_t pi, double a, double b) {
    const auto est = gk15(integrand(pieces[pi]), a, b);
    return Interval{pi, a, b, est.kronrod, std::abs(est.kronrod - est.gauss), est.abs_integral};
  };
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    heap.push_back(make(i, pieces[i].u0, pieces[i].u1));
  }
  std::make_heap(heap.begin(), heap.end());

  auto totals = [&](cplx& value, double& err, double& ab) {
    ComplexCompensatedSum v;
    CompensatedSum e, a;
    for (const auto& it : heap) {
      v.add(it.value);
      e.add(it.err);
      a.add(it.abs_integral);
    }
    value = v.value();
    err = e.value();
    ab = a.value();
  };

  cplx value;
  double err = 0.0, ab = 0.0;
  totals(value, err, ab);
  bool converged = true;
  std::size_t iter = 0;
  auto target = [&] {
    return std::max(tol * std::abs(value), 50.0 * std::numeric_limits<double>::epsilon() * ab);
  };
  while (err > target()) {
    if (heap.size() >= options.max_intervals) {
      converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      converged = false;
      break;
    }
    const Interval l = make(worst.piece, worst.a, mid);
    const Interval r = make(worst.piece, mid, worst.b);
    value += l.value + r.value - worst.value;
    err += l.err + r.err - worst.err;
    ab += l.abs_integral + r.abs_integral - worst.abs_integral;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end());
    if (++iter % 64 == 0) totals(value, err, ab);
  }
  totals(value, err, ab);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw NumericError("quad_contour: non-finite integrand");
  return QuadResult{value, err, evals, heap.size(), converged};
}

QuadResult quad_interval(const std::function<double(double)>& f, double a, double b, double tol,
                         const QuadOptions& options) {
  if (a == b) return {};
  return quad_contour([&](cplx z) { return cplx(f(z.real()), 0.0); }, ComplexPath::segment(a, b),
                      tol, options);
}

}  // namespace cubicpt
