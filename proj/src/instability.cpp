// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/instability.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/quadrature.hpp"
#include "cubicpt/numkit/special.hpp"
#include "cubicpt/numkit/summation.hpp"
#include "cubicpt/stokes.hpp"

namespace cubicpt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNegligible = 40.0;  // log-amplitude below the maximum that is skipped

template <class Acc>
struct Accumulators {
  Acc pairing;
  Acc norm;
  CompensatedSum rule;
  std::size_t intervals = 0;
};

// Adds int psi^2 dz over one shot; orientation -1 reverses dz.
template <class Acc>
void integrate_shot(const OdeSolution& sol, cplx factor, double log_factor, double M, double orientation,
                    Accumulators<Acc>& acc) {
  const auto& S = sol.samples();
  const double lf = log_factor + std::log(std::abs(factor)) - M;
  const cplx phase = factor / std::abs(factor);
  auto scaled = [&](const OdeSample& x) { return x.value * phase * std::exp(x.log_scale + lf); };
  auto log_abs = [&](const OdeSample& x) { return std::log(std::abs(x.value)) + x.log_scale + lf; };
  for (std::size_t k = 0; k + 1 < S.size(); ++k) {
    const auto& a = S[k];
    const auto& b = S[k + 1];
    if (std::max(log_abs(a), log_abs(b)) < -kNegligible) continue;
    const double mid = 0.5 * (a.s + b.s);
    const double half = 0.5 * (b.s - a.s);
    const cplx t = orientation * sol.path().tangent(sol.path().segment_index(mid));
    cplx fk[15];
    double ak[15];
    for (int j = 0; j < 15; ++j) {
      const double x = j < 7 ? -Gk15::xgk[j] : (j == 7 ? 0.0 : Gk15::xgk[14 - j]);
      const double s = mid + half * x;
      cplx w;
      if (s == a.s) w = scaled(a);
      else if (s == b.s) w = scaled(b);
      else w = scaled(sol.evaluate(s));
      fk[j] = w * w * t;
      ak[j] = std::norm(w);
    }
    cplx K = 0.0, G = 0.0;
    double A = 0.0;
    for (int j = 0; j < 15; ++j) {
      const int m = j < 7 ? j : 14 - j;
      K += Gk15::wgk[m] * fk[j];
      A += Gk15::wgk[m] * ak[j];
      if (m % 2 == 1) G += Gk15::wg[m / 2] * fk[j];
    }
    acc.pairing.add(half * K);
    acc.norm.add(half * A);
    acc.rule.add(half * std::abs(K - G));
    ++acc.intervals;
  }
}

template <class Acc>
PairingIntegrals integrate_glued(const GluedSolution& g, cplx scale) {
  const double M = g.max_log_abs_value() + std::log(std::abs(scale));
  Accumulators<Acc> acc;
  integrate_shot(g.left, g.left_factor * scale, g.left_log_factor, M, 1.0, acc);
  integrate_shot(g.right, scale, 0.0, M, -1.0, acc);
  const double e2 = std::exp(2.0 * M);
  PairingIntegrals r;
  r.pairing = acc.pairing.value() * e2;
  r.norm_sq = std::real(acc.norm.value()) * e2;
  r.rule_error = acc.rule.value() * e2;
  r.rounding = kEps * r.norm_sq;
  r.intervals = acc.intervals;
  return r;
}

struct RealAcc {
  ComplexCompensatedSum s;
  void add(cplx z) { s.add(z); }
  void add(double x) { s.add(cplx(x)); }
  cplx value() const { return s.value(); }
};

struct DdAcc {
  ComplexDoubleDoubleSum s;
  void add(cplx z) { s.add(z); }
  void add(double x) { s.add(cplx(x)); }
  cplx value() const { return s.value(); }
};

}  // namespace

PairingIntegrals pairing_integrals(const GluedSolution& g, Precision precision, cplx scale) {
  if (scale == cplx(0.0) || !std::isfinite(std::abs(scale)))
    throw DomainError("pairing_integrals: scale must be finite and nonzero");
  return precision == Precision::double_double ? integrate_glued<DdAcc>(g, scale)
                                               : integrate_glued<RealAcc>(g, scale);
}

InstabilityRecord kappa(const EigenRecord& rec, const KappaOptions& opt) {
  if (!(rec.match_residual <= rec.config.tol_match))
    throw SolverError("kappa: eigenvalue residual above tol_match");
  if (!(opt.loose_factor > 1.0)) throw DomainError("kappa: loose_factor must exceed 1");
  if (!(opt.max_relative_error > 0.0 && opt.max_relative_error <= 0.1))
    throw DomainError("kappa: max_relative_error must lie in (0, 0.1]");
  InstabilityRecord r;
  r.n = rec.n;
  r.alpha = rec.alpha;
  r.lambda = rec.lambda;
  r.h = rec.h;
  r.precision = opt.precision == Precision::double_double ? "dd" : "double";
  const double loose_tol = std::min(1e-3, rec.config.tol_ode * opt.loose_factor);

  const auto I = pairing_integrals(rec.samples_real, opt.precision, opt.scale);
  const auto Il = pairing_integrals(sample_real_line(rec, loose_tol), opt.precision, opt.scale);
  r.norm_sq = I.norm_sq;
  r.self_pairing = I.pairing;
  r.noise_floor = I.rounding;
  r.quadrature_error = I.rule_error + I.rounding + std::abs(I.pairing - Il.pairing);
  const double D = std::abs(I.pairing);
  if (!(D >= 100.0 * r.noise_floor) || !(r.quadrature_error <= opt.max_relative_error * D)) {
    std::ostringstream m;
    m << "kappa: denominator below noise for n=" << rec.n << ", alpha=" << rec.alpha << " (|int psi^2|="
      << D << ", error budget " << r.quadrature_error << ", norm " << r.norm_sq
      << "); lower n or use double-double accumulation";
    throw PrecisionError(m.str());
  }
  r.kappa = r.norm_sq / D;
  r.log_kappa = std::log(r.norm_sq) - std::log(D);

  if (opt.contour && rec.samples_contour) {
    const auto C = pairing_integrals(*rec.samples_contour, opt.precision, opt.scale);
    const auto Cl = pairing_integrals(
        sample_on_contour(rec, rec.contour, rec.contour_match_arc, loose_tol), opt.precision, opt.scale);
    r.self_pairing_contour = C.pairing;
    r.quadrature_error_contour = C.rule_error + C.rounding + std::abs(C.pairing - Cl.pairing);
    r.kappa_contour = r.norm_sq / std::abs(C.pairing);
  }
  return r;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& y,
                                  double* residual_rms) {
  const std::size_t m = y.size();
  if (design.size() != m || m == 0) throw DomainError("least_squares: size mismatch");
  const std::size_t p = design[0].size();
  Eigen::MatrixXd A(m, p);
  Eigen::VectorXd b(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (design[i].size() != p) throw DomainError("least_squares: ragged design");
    for (std::size_t j = 0; j < p; ++j) A(i, j) = design[i][j];
    b(i) = y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (static_cast<std::size_t>(qr.rank()) < p || m < p)
    throw NumericError("least_squares: rank-deficient design matrix");
  const Eigen::VectorXd x = qr.solve(b);
  if (residual_rms) *residual_rms = std::sqrt((A * x - b).squaredNorm() / double(m));
  return {x.data(), x.data() + p};
}

namespace {

void check_series(const std::vector<InstabilityRecord>& rs) {
  if (rs.size() < 5) throw DomainError("growth_fit: at least five records are required");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].alpha != rs[0].alpha) throw DomainError("growth_fit: records must share alpha");
    for (std::size_t j = 0; j < i; ++j)
      if (rs[i].n == rs[j].n) throw DomainError("growth_fit: duplicate n");
  }
}

void fill_diagnostics(GrowthFit& f, std::vector<InstabilityRecord> rs) {
  std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  f.n_min = rs.front().n;
  f.n_max = rs.back().n;
  f.alpha = rs.front().alpha;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    f.normalized.push_back(rs[i].log_kappa / rs[i].n);
    if (i + 1 < rs.size() && rs[i + 1].n == rs[i].n + 1) f.cauchy.push_back(rs[i + 1].log_kappa - rs[i].log_kappa);
  }
}

}  // namespace

GrowthFit growth_fit(const std::vector<InstabilityRecord>& rs) {
  check_series(rs);
  std::vector<std::vector<double>> A;
  std::vector<double> y;
  for (const auto& r : rs) {
    A.push_back({double(r.n), 1.0});
    y.push_back(r.log_kappa + 0.25 * std::log(double(r.n)));
  }
  GrowthFit f;
  const auto x = least_squares(A, y, &f.residual_rms);
  f.slope = x[0];
  f.offset = x[1];
  fill_diagnostics(f, rs);
  return f;
}

GrowthFit growth_fit_joint(const std::vector<InstabilityRecord>& a, const std::vector<InstabilityRecord>& b) {
  check_series(a);
  check_series(b);
  if (a.size() != b.size()) throw DomainError("growth_fit_joint: n ranges must match");
  for (const auto& r : a)
    if (std::none_of(b.begin(), b.end(), [&](const auto& s) { return s.n == r.n; }))
      throw DomainError("growth_fit_joint: n ranges must match");
  const double aa = a[0].alpha, ab = b[0].alpha;
  if (aa == ab) throw DomainError("growth_fit_joint: alpha values must differ");
  std::vector<std::vector<double>> A;
  std::vector<double> y;
  for (const auto* rs : {&a, &b}) {
    const bool second = rs == &b;
    for (const auto& r : *rs) {
      const double n = r.n;
      A.push_back({n, r.alpha * std::pow(n, 0.2), second ? 0.0 : 1.0, second ? 1.0 : 0.0});
      y.push_back(r.log_kappa + 0.25 * std::log(n));
    }
  }
  GrowthFit f;
  const auto x = least_squares(A, y, &f.residual_rms);
  f.slope = x[0];
  f.alpha_coeff = x[1];
  f.offset = x[3];
  fill_diagnostics(f, b);
  return f;
}

DenominatorSeries denominator_constancy(const std::vector<InstabilityRecord>& records) {
  if (records.size() < 2) throw DomainError("denominator_constancy: at least two records are required");
  auto rs = records;
  std::sort(rs.begin(), rs.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
  DenominatorSeries out;
  double lo = INFINITY, hi = 0.0;
  out.nonzero = true;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].alpha != rs[0].alpha) throw DomainError("denominator_constancy: records must share alpha");
    if (rs[i].self_pairing_contour == cplx(0.0) && rs[i].kappa_contour == 0.0)
      throw DomainError("denominator_constancy: records lack contour denominators");
    DenominatorPoint p{rs[i].n, rs[i].self_pairing_contour, 0.0};
    if (i > 0) p.relative_change = std::abs(p.d - out.points.back().d) / std::abs(out.points.back().d);
    const double m = std::abs(p.d);
    out.nonzero = out.nonzero && m > 0.0;
    if (rs[i].n >= 6) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    out.points.push_back(p);
  }
  out.max_min_ratio = hi > 0.0 ? hi / lo : NAN;
  out.decreasing_changes = true;
  double prev = INFINITY;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (out.points[i].n < 7 || out.points[i - 1].n + 1 != out.points[i].n) continue;
    if (out.points[i].relative_change > prev) out.decreasing_changes = false;
    prev = out.points[i].relative_change;
  }
  return out;
}

namespace {

// log psi at a complex point: real-line sample, continued off the axis when needed. Below the axis
// the path leans outward so that the recessive solution grows along it.
cplx log_psi(const EigenRecord& rec, cplx z) {
  const double X = rec.config.x_max;
  if (std::abs(z.real()) > X) throw DomainError("log_psi: point outside the sampled window");
  const double x0 = z.imag() < 0.0 ? std::clamp(z.real() + std::copysign(2.0 * -z.imag(), z.real()), -X, X) : z.real();
  const auto s = rec.samples_real.evaluate(x0 + X);
  if (z.imag() == 0.0) return std::log(s.value) + s.log_scale;
  const double beta = rec.alpha * std::pow(rec.h, 0.8);
  const cplx mu = rec.lambda * std::pow(rec.h, 1.2);
  const double h2 = rec.h * rec.h;
  auto q = [=](cplx x) { return (cplx(0.0, 1.0) * x * (x * x + beta) - mu) / h2; };
  const auto sol = integrate_ode2(q, ComplexPath::segment(x0, z), s.value, s.derivative, rec.config.tol_ode,
                                  {}, s.log_scale);
  return std::log(sol.back().value) + sol.back().log_scale;
}

double distance_to(const StokesLine& l, cplx z) { return polyline_distance(z, l.polyline); }

}  // namespace

WkbReport wkb_validate(const EigenRecord& rec, const Rectangle& R, std::size_t grid, double eps) {
  if (grid < 2) throw DomainError("wkb_validate: grid must have at least two points per axis");
  if (!(R.re_min <= R.re_max && R.im_min <= R.im_max)) throw DomainError("wkb_validate: empty rectangle");
  const ModelParams p{rec.alpha, rec.h};
  DiagramOptions dopt;
  dopt.x_max = rec.config.x_max;
  dopt.tube_eps = INFINITY;
  const auto dg = build_diagram(p, dopt);
  const std::size_t nx = R.re_min == R.re_max ? 1 : grid;
  const std::size_t ny = R.im_min == R.im_max ? 1 : grid;
  WkbReport out;
  out.tube_distance = INFINITY;
  std::vector<cplx> pts;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const double x = nx == 1 ? R.re_min : R.re_min + (R.re_max - R.re_min) * double(i) / double(nx - 1);
      const double y = ny == 1 ? R.im_min : R.im_min + (R.im_max - R.im_min) * double(j) / double(ny - 1);
      const cplx z(x, y);
      out.tube_distance = std::min({out.tube_distance, distance_to(dg.ell_f, z), distance_to(dg.ell_i, z)});
      pts.push_back(z);
    }
  if (out.tube_distance < eps) throw GeometryError("wkb_validate: region meets the ell_f or ell_i tube");
  CompensatedSum mean;
  for (cplx z : pts) {
    const auto w = decaying_initial_data(z, p, Side::plus);
    const double d = std::abs(std::exp(log_psi(rec, z) - w.log_value) - 1.0);
    out.deviation = std::max(out.deviation, d);
    mean.add(d);
  }
  out.points = pts.size();
  out.mean_deviation = mean.value() / double(pts.size());
  return out;
}

FarFieldReport far_field_amplitude(const EigenRecord& rec, double x_lo, double x_hi, std::size_t points) {
  if (points < 2 || !(0.0 < x_lo && x_lo < x_hi && x_hi <= rec.config.x_max))
    throw DomainError("far_field_amplitude: invalid window");
  const ModelParams p{rec.alpha, rec.h};
  const auto tp = turning_points(p);
  FarFieldReport out;
  double lo = INFINITY, hi = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double x = x_lo + (x_hi - x_lo) * double(k) / double(points - 1);
    const auto w = decaying_initial_data(x, p, Side::plus);
    // Re S / h = -Re log_value - log|V^{1/4}|.
    const double re_s = -w.log_value.real() - std::log(std::abs(quartic_root_V(x, tp)));
    const double a = std::exp(log_psi(rec, x).real() + 0.75 * std::log(x) + re_s);
    out.amplitude.push_back(a);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    sum += a;
  }
  out.variation = (hi - lo) / (sum / double(points));
  return out;
}

namespace {

struct ArmSample {
  cplx z;
  cplx zeta;
  cplx dzeta;
  cplx log_psi;
};

// Ratio samples on one anti-Stokes arm of the stored contour, walking outward from the turning
// point at arc s0 in direction dir (+1 or -1).
std::vector<ArmSample> arm_samples(const EigenRecord& rec, double s0, int dir, const GluedSolution& g,
                                   double h23) {
  const ComplexPath& L = rec.contour;
  const ModelParams p{rec.alpha, rec.h};
  const std::size_t n = L.vertices().size();
  std::size_t k0 = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(L.arc_at(k) - s0) < std::abs(L.arc_at(k0) - s0)) k0 = k;
  auto sqrtv = [&](cplx z, cplx t) {
    cplx w = std::sqrt(potential(z, p));
    return (w * t).real() >= 0.0 ? w : -w;
  };
  std::vector<ArmSample> out;
  cplx S = 0.0;
  const double l_left = g.left.path().length() - rec.contour_match_arc;
  const double l_right = g.right.path().length() - (L.length() - rec.contour_match_arc);
  for (std::size_t k = k0; dir > 0 ? k + 1 < n : k > 0; k += dir) {
    const cplx a = L.vertices()[k];
    const cplx b = L.vertices()[k + dir];
    const cplx t = (b - a) / std::abs(b - a);
    // Segment action; the first segment carries the square-root endpoint.
    QuadOptions qo;
    if (k == k0) qo.start = Endpoint::sqrt_singular;
    S += quad_contour([&](cplx z) { return sqrtv(z, t); }, ComplexPath::segment(a, b), 1e-13, qo).value;
    const cplx zeta = std::pow(1.5 * S, 2.0 / 3.0);
    if (std::abs(zeta) / h23 > 4.0) break;
    if (std::abs(zeta) / h23 < 1.0) continue;
    const double s = L.arc_at(k + dir);
    OdeSample v = s <= rec.contour_match_arc ? g.left.evaluate(l_left + s)
                                              : g.right.evaluate(l_right + (L.length() - s));
    cplx lp = std::log(v.value) + v.log_scale;
    if (s <= rec.contour_match_arc) lp += std::log(g.left_factor) + g.left_log_factor;
    out.push_back({b, zeta, sqrtv(b, t) / std::sqrt(zeta), lp});
  }
  return out;
}

void summarize(const std::vector<ArmSample>& xs, double h, cplx* mean, double* spread) {
  if (xs.empty()) throw GeometryError("airy_connection_check: no samples with |zeta|/h^{2/3} in [1, 4]");
  const double h23 = std::pow(h, 2.0 / 3.0);
  const double norm = std::pow(h, 1.0 / 6.0) / (2.0 * std::sqrt(std::numbers::pi));
  std::vector<cplx> r;
  cplx prev_pref = 0.0;
  for (const auto& x : xs) {
    const cplx pref = 1.0 / std::sqrt(x.dzeta);  // (zeta / V)^{1/4}
    if (prev_pref != cplx(0.0) && std::abs(pref - prev_pref) > 0.5 * std::abs(prev_pref))
      throw GeometryError("airy_connection_check: zeta branch discontinuity");
    prev_pref = pref;
    const cplx ai = airy_ai(x.zeta / h23);
    r.push_back(std::exp(x.log_psi - std::log(pref * ai)) * norm);
  }
  cplx m = 0.0;
  for (cplx v : r) m += v;
  m /= double(r.size());
  double s = 0.0;
  for (cplx v : r) s = std::max(s, std::abs(v - m));
  *mean = m;
  *spread = s;
}

double wrap(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

AiryReport airy_connection_check(const EigenRecord& rec) {
  if (!rec.samples_contour) throw DomainError("airy_connection_check: record lacks contour samples");
  const double h23 = std::pow(rec.h, 2.0 / 3.0);
  const auto plus = arm_samples(rec, rec.contour_ell_f_end, +1, *rec.samples_contour, h23);
  const auto minus = arm_samples(rec, rec.contour_ell_f_begin, -1, *rec.samples_contour, h23);
  AiryReport out;
  summarize(plus, rec.h, &out.ratio_plus, &out.spread_plus);
  summarize(minus, rec.h, &out.ratio_minus, &out.spread_minus);
  out.points_plus = plus.size();
  out.points_minus = minus.size();
  out.modulus_mismatch = std::abs(std::abs(out.ratio_minus) - std::abs(out.ratio_plus)) / std::abs(out.ratio_plus);
  out.phase = std::arg(out.ratio_minus / out.ratio_plus);
  out.expected_phase = wrap((rec.n - 1) * std::numbers::pi + 0.5 * std::numbers::pi);
  out.phase_error = std::abs(wrap(out.phase - out.expected_phase));
  return out;
}

}  // namespace cubicpt
