// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cubicpt/model.hpp"
#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt {

enum class LineKind { stokes, anti_stokes };
enum class TerminalKind { turning_point, asymptotic, truncated };

// Level curve of S(z) = int_origin^z sqrt(V): Re S = 0 (stokes) or Im S = 0 with Re S increasing
// (anti_stokes). `action` holds S at every vertex, accumulated along the polyline.
struct StokesLine {
  LineKind kind = LineKind::stokes;
  TurningLabel origin = TurningLabel::plus;
  ComplexPath polyline;
  std::vector<cplx> action;
  TerminalKind terminal = TerminalKind::truncated;
  TurningLabel terminal_point = TurningLabel::plus;  // valid for TerminalKind::turning_point
  int direction = -1;                                // asymptotic sector index 0..4
  double closure_gap = 0.0;                          // distance from the last traced vertex to terminal_point
  bool chart_consistent = true;  // initial sqrt(V) sign agrees with the global branch chart
};

struct TraceOptions {
  double max_len = 40.0;
  double r_stop = 10.0;  // asymptotic termination radius
  double step_max = 0.01;
  double step_floor = 1e-6;
  double terminal_radius = 1e-6;
  std::function<bool(cplx z, cplx action)> stop;  // optional truncation predicate
};

// Asymptotic directions: stokes lines approach arg z = pi/10 + 2k pi/5, anti-Stokes lines
// arg z = -pi/10 + 2k pi/5.
double asymptotic_angle(LineKind kind, int k);
int nearest_direction(LineKind kind, cplx z);

// The three initial directions of `kind` lines at a simple turning point.
std::array<cplx, 3> local_directions(const ModelParams& p, const TurningPoints& tp,
                                     TurningLabel origin, LineKind kind);

// Throws GeometryError on stagnation or when the direction field vanishes away from turning points.
StokesLine trace_line(const ModelParams& p, const TurningPoints& tp, TurningLabel origin,
                      cplx direction, LineKind kind, const TraceOptions& options = {});

struct DiagramOptions {
  double eps_trunc = 1e-18;
  double x_max = 12.0;
  double r_stop = 10.0;
  double tube_eps = 0.1;
  bool unbounded_lines = true;  // false builds only ell_f, ell_tilde_pm and contour_L
};

struct StokesDiagram {
  ModelParams params;
  TurningPoints turning;
  DiagramOptions options;
  std::vector<StokesLine> lines;  // unbounded stokes lines
  StokesLine ell_f;               // x_minus -> x_plus
  StokesLine ell_f_reverse;       // x_plus -> x_minus, traced independently
  StokesLine ell_i;
  StokesLine ell_tilde_plus, ell_tilde_minus;
  ComplexPath contour_L;  // reversed ell_tilde_minus, ell_f, ell_tilde_plus
  std::size_t contour_ell_f_begin = 0, contour_ell_f_end = 0;  // vertex range of ell_f in contour_L
  double ell_f_tube_excess = 0.0;  // max distance of ell_f beyond the tube around the h = 0 line
  double ell_i_tube_excess = 0.0;

  // Number of unbounded lines per asymptotic sector.
  std::array<int, 5> census() const;
};

// Throws GeometryError when no finite line joins x_minus and x_plus.
StokesDiagram build_diagram(const ModelParams& p, const DiagramOptions& options = {});

// Distance from z to the polyline.
double polyline_distance(cplx z, const ComplexPath& path);

}  // namespace cubicpt
