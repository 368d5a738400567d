// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "cubicpt/errors.hpp"

namespace cubicpt {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

constexpr std::array<double, 4> kGlX = {0.1834346424956498, 0.5255324099163290,
                                        0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlW = {0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

// sqrt(V(z)) on the branch closest to `ref`.
cplx aligned_sqrt(cplx z, const ModelParams& p, cplx ref) {
  const cplx w = std::sqrt(potential(z, p));
  return std::norm(w - ref) <= std::norm(w + ref) ? w : -w;
}

// int_a^b sqrt(V) along the chord, continuing the branch from w_a.
cplx chord_action(cplx a, cplx b, cplx w_a, const ModelParams& p) {
  std::array<double, 8> t;
  std::array<double, 8> w;
  for (int k = 0; k < 4; ++k) {
    t[k] = -kGlX[3 - k];
    w[k] = kGlW[3 - k];
    t[7 - k] = kGlX[3 - k];
    w[7 - k] = kGlW[3 - k];
  }
  const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx ref = w_a, sum = 0.0;
  for (int k = 0; k < 8; ++k) {
    ref = aligned_sqrt(mid + half * t[k], p, ref);
    sum += w[k] * ref;
  }
  return sum * half;
}

double wrap_angle(double a) {
  while (a > pi) a -= 2 * pi;
  while (a <= -pi) a += 2 * pi;
  return a;
}

}  // namespace

double asymptotic_angle(LineKind kind, int k) {
  return (kind == LineKind::stokes ? pi / 10 : -pi / 10) + 2 * pi * k / 5;
}

int nearest_direction(LineKind kind, cplx z) {
  int best = 0;
  double bd = INFINITY;
  for (int k = 0; k < 5; ++k) {
    const double d = std::abs(wrap_angle(std::arg(z) - asymptotic_angle(kind, k)));
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

std::array<cplx, 3> local_directions(const ModelParams& p, const TurningPoints& tp,
                                     TurningLabel origin, LineKind kind) {
  const double a = std::arg(std::sqrt(potential_derivative(tp[origin], p)));
  const double base = kind == LineKind::stokes ? (pi / 2 - a) / 1.5 : -a / 1.5;
  std::array<cplx, 3> d;
  for (int k = 0; k < 3; ++k) d[k] = std::polar(1.0, base + 2 * pi * k / 3);
  return d;
}

StokesLine trace_line(const ModelParams& p, const TurningPoints& tp, TurningLabel origin,
                      cplx direction, LineKind kind, const TraceOptions& o) {
  const cplx x0 = tp[origin];
  const auto all = tp.as_array();
  direction /= std::abs(direction);
  StokesLine line;
  line.kind = kind;
  line.origin = origin;

  auto field = [&](cplx w, cplx prev) {
    cplx d = std::conj(w) / std::abs(w);
    if (kind == LineKind::stokes) {
      d *= I;
      if ((d * std::conj(prev)).real() < 0.0) d = -d;
    }
    return d;
  };

  std::vector<cplx> verts{x0};
  std::vector<cplx> action{0.0};
  // First step from the turning point, using S ~ (2/3)(z - x0) sqrt(V).
  cplx z = x0 + o.step_floor * direction;
  cplx w = std::sqrt(potential(z, p));
  if (kind == LineKind::anti_stokes) {
    if ((direction * w).real() < 0.0) w = -w;
  } else if (cut_distance(z, tp) > 1e-10) {
    const cplx c = sqrt_V(z, tp);
    if (std::norm(c - w) > std::norm(c + w)) w = -w;
  }
  if (cut_distance(z, tp) > 1e-10) {
    const cplx c = sqrt_V(z, tp);
    line.chart_consistent = std::norm(c - w) < std::norm(c + w);
  }
  cplx S = (2.0 / 3.0) * (z - x0) * w;
  verts.push_back(z);
  action.push_back(S);
  cplx d_prev = direction;
  double arc = o.step_floor;
  double prev_gap = INFINITY;
  bool done = false;

  for (std::size_t iter = 0; !done; ++iter) {
    if (iter > 2'000'000) throw GeometryError("trace_line: stagnation");
    if (std::abs(w) == 0.0) throw GeometryError("trace_line: direction field vanishes");
    double near = INFINITY;
    for (cplx t : all) near = std::min(near, std::abs(z - t));
    const double ds = std::clamp(std::min(o.step_max, 0.1 * near), o.step_floor, o.step_max);

    const cplx d1 = field(w, d_prev);
    if ((d1 * std::conj(d_prev)).real() < -0.5) throw GeometryError("trace_line: line reverses");
    const cplx zp = z + ds * d1;
    const cplx d2 = field(aligned_sqrt(zp, p, w), d1);
    cplx dm = d1 + d2;
    dm /= std::abs(dm);
    cplx zn = z + ds * dm;
    cplx wn = aligned_sqrt(zn, p, w);
    cplx Sn = S + chord_action(z, zn, w, p);
    // Newton projection transverse to the line onto the exact level set.
    for (int it = 0; it < 3; ++it) {
      const double r = kind == LineKind::stokes ? Sn.real() : Sn.imag();
      if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(Sn))) break;
      const cplx nrm = std::conj(wn) / std::norm(wn);
      zn -= r * (kind == LineKind::stokes ? nrm : I * nrm);
      wn = aligned_sqrt(zn, p, w);
      Sn = S + chord_action(z, zn, w, p);
    }
    arc += std::abs(zn - z);
    d_prev = (zn - z) / std::abs(zn - z);
    z = zn;
    w = wn;
    S = Sn;
    verts.push_back(z);
    action.push_back(S);

    // Termination.
    for (int k = 0; k < 3; ++k) {
      if (static_cast<TurningLabel>(k) == origin) continue;
      const double gap = std::abs(z - all[k]);
      if (gap < o.terminal_radius) {
        line.terminal = TerminalKind::turning_point;
        line.terminal_point = static_cast<TurningLabel>(k);
        line.closure_gap = gap;
        done = true;
      }
    }
    if (done) break;
    // Passing a turning point at a distance above the terminal radius.
    double gap_min = INFINITY;
    int k_min = -1;
    for (int k = 0; k < 3; ++k) {
      if (static_cast<TurningLabel>(k) == origin) continue;
      const double g = std::abs(z - all[k]);
      if (g < gap_min) {
        gap_min = g;
        k_min = k;
      }
    }
    if (prev_gap < 1e-4 && gap_min > prev_gap) {
      verts.pop_back();
      action.pop_back();
      line.terminal = TerminalKind::turning_point;
      line.terminal_point = static_cast<TurningLabel>(k_min);
      line.closure_gap = prev_gap;
      break;
    }
    prev_gap = gap_min;
    if (std::abs(z) >= o.r_stop) {
      line.terminal = TerminalKind::asymptotic;
      line.direction = nearest_direction(kind, z);
      break;
    }
    if (o.stop && o.stop(z, S)) {
      line.terminal = TerminalKind::truncated;
      break;
    }
    if (arc >= o.max_len) {
      line.terminal = TerminalKind::truncated;
      break;
    }
  }
  line.polyline = ComplexPath(std::move(verts));
  line.action = std::move(action);
  return line;
}

double polyline_distance(cplx z, const ComplexPath& path) {
  double d = INFINITY;
  const auto& v = path.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const cplx e = v[i + 1] - v[i];
    const double t = std::clamp(((z - v[i]) * std::conj(e)).real() / std::norm(e), 0.0, 1.0);
    d = std::min(d, std::abs(z - (v[i] + t * e)));
  }
  return d;
}

std::array<int, 5> StokesDiagram::census() const {
  std::array<int, 5> c{};
  for (const auto& l : lines)
    if (l.terminal == TerminalKind::asymptotic) c[l.direction]++;
  return c;
}

namespace {

// Appends the exact terminal turning point so the polyline ends on it.
void close_on(StokesLine& l, const TurningPoints& tp) {
  auto v = l.polyline.vertices();
  const cplx t = tp[l.terminal_point];
  if (v.back() != t) {
    v.push_back(t);
    l.action.push_back(l.action.back());
  }
  l.polyline = ComplexPath(std::move(v));
}

const ComplexPath& reference_finite_line() {
  static std::once_flag once;
  static ComplexPath ref;
  std::call_once(once, [] {
    DiagramOptions o;
    o.unbounded_lines = false;
    o.tube_eps = INFINITY;
    ref = build_diagram(ModelParams{0.0, 0.0}, o).ell_f.polyline;
  });
  return ref;
}

StokesLine find_finite(const ModelParams& p, const TurningPoints& tp, TurningLabel from,
                       TurningLabel to) {
  auto dirs = local_directions(p, tp, from, LineKind::stokes);
  const cplx target = tp[to] - tp[from];
  std::sort(dirs.begin(), dirs.end(), [&](cplx a, cplx b) {
    return std::abs(std::arg(a / target)) < std::abs(std::arg(b / target));
  });
  TraceOptions o;
  o.max_len = 4.0 * std::abs(target) + 1.0;
  for (cplx d : dirs) {
    auto l = trace_line(p, tp, from, d, LineKind::stokes, o);
    if (l.terminal == TerminalKind::turning_point && l.terminal_point == to) return l;
  }
  throw GeometryError("build_diagram: no finite Stokes line joins x_minus and x_plus");
}

StokesLine find_anti_stokes(const ModelParams& p, const TurningPoints& tp, TurningLabel from,
                            double target_angle, const DiagramOptions& opt) {
  TraceOptions o;
  o.max_len = 4.0 * opt.x_max;
  o.r_stop = std::min(opt.r_stop, opt.x_max);
  const double level = p.h > 0.0 ? std::log(1.0 / opt.eps_trunc) * p.h : INFINITY;
  o.stop = [&](cplx z, cplx S) { return S.real() >= level || std::abs(z) >= opt.x_max; };
  StokesLine best;
  double best_d = INFINITY;
  for (cplx d : local_directions(p, tp, from, LineKind::anti_stokes)) {
    const cplx z1 = tp[from] + 1e-6 * d;
    if (cut_distance(z1, tp) > 1e-10 && (d * sqrt_V(z1, tp)).real() <= 0.0) continue;
    auto l = trace_line(p, tp, from, d, LineKind::anti_stokes, o);
    if (l.terminal == TerminalKind::turning_point) continue;
    const double dist = std::abs(wrap_angle(std::arg(l.polyline.back()) - target_angle));
    if (dist < best_d) {
      best_d = dist;
      best = std::move(l);
    }
  }
  if (!std::isfinite(best_d)) throw GeometryError("build_diagram: anti-Stokes line not found");
  return best;
}

}  // namespace

StokesDiagram build_diagram(const ModelParams& p, const DiagramOptions& opt) {
  StokesDiagram dg;
  dg.params = p;
  dg.options = opt;
  dg.turning = turning_points(p);
  const auto& tp = dg.turning;

  dg.ell_f = find_finite(p, tp, TurningLabel::minus, TurningLabel::plus);
  dg.ell_f_reverse = find_finite(p, tp, TurningLabel::plus, TurningLabel::minus);
  close_on(dg.ell_f, tp);
  close_on(dg.ell_f_reverse, tp);

  if (opt.unbounded_lines) {
    TraceOptions o;
    o.r_stop = opt.r_stop;
    o.max_len = 10.0 * opt.r_stop;
    for (auto origin : {TurningLabel::plus, TurningLabel::minus, TurningLabel::imag}) {
      for (cplx d : local_directions(p, tp, origin, LineKind::stokes)) {
        auto l = trace_line(p, tp, origin, d, LineKind::stokes, o);
        if (l.terminal == TerminalKind::turning_point) continue;
        if (l.terminal != TerminalKind::asymptotic)
          throw GeometryError("build_diagram: unbounded Stokes line did not reach the far field");
        if (origin == TurningLabel::imag && l.direction == 1) dg.ell_i = l;
        dg.lines.push_back(std::move(l));
      }
    }
    if (dg.lines.size() != 7) throw GeometryError("build_diagram: expected seven unbounded lines");
    if (dg.ell_i.polyline.segment_count() == 0)
      throw GeometryError("build_diagram: no line from x_i reaches direction 1");
  }

  dg.ell_tilde_plus = find_anti_stokes(p, tp, TurningLabel::plus, -pi / 10, opt);
  dg.ell_tilde_minus = find_anti_stokes(p, tp, TurningLabel::minus, pi + pi / 10, opt);

  dg.contour_L = dg.ell_tilde_minus.polyline.reversed();
  dg.contour_ell_f_begin = dg.contour_L.vertices().size() - 1;
  dg.contour_L = dg.contour_L.then(dg.ell_f.polyline);
  dg.contour_ell_f_end = dg.contour_L.vertices().size() - 1;
  dg.contour_L = dg.contour_L.then(dg.ell_tilde_plus.polyline);

  if (std::isfinite(opt.tube_eps)) {
    const auto& ref = reference_finite_line();
    for (cplx v : dg.ell_f.polyline.vertices())
      dg.ell_f_tube_excess = std::max(dg.ell_f_tube_excess, polyline_distance(v, ref) - opt.tube_eps);
    if (opt.unbounded_lines) {
      const ComplexPath ray({I, I * (1.0 + 2.0 * opt.r_stop)});
      for (cplx v : dg.ell_i.polyline.vertices())
        dg.ell_i_tube_excess = std::max(dg.ell_i_tube_excess, polyline_distance(v, ray) - opt.tube_eps);
    }
  }
  return dg;
}

}  // namespace cubicpt
