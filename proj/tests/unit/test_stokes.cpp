// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubicpt/errors.hpp"
#include "cubicpt/semiclassics.hpp"
#include "cubicpt/stokes.hpp"

using namespace cubicpt;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

}  // namespace

TEST_SUITE("stokes") {
  TEST_CASE("asymptotic directions") {
    CHECK(asymptotic_angle(LineKind::stokes, 0) == doctest::Approx(pi / 10));
    CHECK(asymptotic_angle(LineKind::anti_stokes, 0) == doctest::Approx(-pi / 10));
    CHECK(nearest_direction(LineKind::stokes, 5.0 * I) == 1);
    CHECK(nearest_direction(LineKind::stokes, std::polar(5.0, pi / 10 + 0.1)) == 0);
  }

  TEST_CASE("census at alpha = 0, h = 0") {
    const auto d = build_diagram({0.0, 0.0});
    const auto c = d.census();
    int total = 0;
    for (int k : c) total += k;
    CHECK(total == 7);
    CHECK(d.lines.size() == 7);
    // mirror symmetry of the sectors: D_k <-> D_{2-k mod 5}
    for (int k = 0; k < 5; ++k) CHECK(c[k] == c[((2 - k) % 5 + 5) % 5]);
    CHECK(d.ell_i.origin == TurningLabel::imag);
    CHECK(d.ell_i.direction == 1);
    int from_imag_in_d1 = 0;
    for (const auto& l : d.lines)
      if (l.direction == 1 && l.origin == TurningLabel::imag) ++from_imag_in_d1;
    CHECK(from_imag_in_d1 == 1);
  }

  TEST_CASE("ell_i overlays the ray i[1, inf) at alpha = 0, h = 0") {
    const auto d = build_diagram({0.0, 0.0});
    for (cplx v : d.ell_i.polyline.vertices()) {
      CHECK(std::abs(v.real()) < 1e-6);
      CHECK(v.imag() >= 1.0 - 1e-9);
    }
    CHECK(d.ell_i_tube_excess <= 0.0);
    CHECK(d.ell_f_tube_excess <= 0.0);
  }

  TEST_CASE("level-curve property of Stokes lines") {
    for (double a : {0.0, 1.0}) {
      const ModelParams p{a, 0.1};
      const auto d = build_diagram(p);
      int charted = 0;
      auto check_line = [&](const StokesLine& l) {
        double worst = 0.0;
        for (cplx s : l.action) worst = std::max(worst, std::abs(s.real()));
        CHECK(worst <= 1e-7);
        // independent quadrature in the global chart, for lines that stay off the cuts
        const auto& vs = l.polyline.vertices();
        bool off_cuts = l.chart_consistent;
        for (cplx v : vs) {
          double near = INFINITY;
          for (cplx t : d.turning.as_array()) near = std::min(near, std::abs(v - t));
          if (near > 0.05) off_cuts = off_cuts && cut_distance(v, d.turning) > 1e-3;
        }
        if (!off_cuts) return;
        ++charted;
        for (std::size_t i : {vs.size() / 4, vs.size() / 2, vs.size() - 1}) {
          const auto sub = l.polyline.slice(0.0, l.polyline.arc_at(i));
          CHECK(std::abs(action_along(p, sub).real()) <= 1e-7);
        }
      };
      for (const auto& l : d.lines) check_line(l);
      check_line(d.ell_f);
      CHECK(charted >= 3);
    }
  }

  TEST_CASE("monotone real action along the anti-Stokes arms") {
    for (double a : {0.0, 1.0, 2.0}) {
      const auto d = build_diagram({a, 0.2});
      for (const auto* l : {&d.ell_tilde_plus, &d.ell_tilde_minus}) {
        CHECK(l->kind == LineKind::anti_stokes);
        for (std::size_t i = 1; i < l->action.size(); ++i) CHECK(l->action[i].real() > l->action[i - 1].real());
        double drift = 0.0;
        for (cplx s : l->action) drift = std::max(drift, std::abs(s.imag()));
        CHECK(drift <= 1e-7);
      }
    }
  }

  TEST_CASE("ell_f closes on the other turning point") {
    for (double a : {0.0, 1.0, 2.0})
      for (double h : {0.0, 0.1, 0.2, 0.3}) {
        CAPTURE(a);
        CAPTURE(h);
        const auto d = build_diagram({a, h});
        CHECK(d.ell_f.terminal == TerminalKind::turning_point);
        CHECK(std::abs(d.ell_f.polyline.back() - d.turning.plus) <= 1e-6);
        CHECK(std::abs(d.ell_f.polyline.front() - d.turning.minus) <= 1e-12);
        CHECK(std::abs(d.ell_f_reverse.polyline.back() - d.turning.minus) <= 1e-6);
        CHECK(d.ell_f.closure_gap <= 1e-6);
      }
  }

  TEST_CASE("mirror symmetry of the alpha = 0 diagram") {
    const auto d = build_diagram({0.0, 0.15});
    for (const auto& l : d.lines) {
      double worst = 0.0;
      for (cplx v : l.polyline.vertices()) {
        double best = INFINITY;
        for (const auto& m : d.lines) best = std::min(best, polyline_distance(-std::conj(v), m.polyline));
        worst = std::max(worst, best);
      }
      CHECK(worst < 1e-3);
    }
    for (cplx v : d.ell_f.polyline.vertices()) CHECK(polyline_distance(-std::conj(v), d.ell_f.polyline) < 1e-3);
    for (cplx v : d.ell_tilde_plus.polyline.vertices())
      CHECK(polyline_distance(-std::conj(v), d.ell_tilde_minus.polyline) < 1e-3);
  }

  TEST_CASE("contour L joins the two decay sectors through ell_f") {
    const auto d = build_diagram({1.0, 0.1});
    const auto& vs = d.contour_L.vertices();
    CHECK(std::abs(vs[d.contour_ell_f_begin] - d.turning.minus) < 1e-12);
    CHECK(std::abs(vs[d.contour_ell_f_end] - d.turning.plus) < 1e-6);
    CHECK(std::abs(std::arg(d.contour_L.back()) + pi / 10) < 0.2);
    CHECK(std::abs(std::arg(-d.contour_L.front()) - pi / 10) < 0.2);
  }

  TEST_CASE("coalescing turning points are rejected") {
    const double h = 0.2;
    CHECK_THROWS_AS(build_diagram({collision_shift() / std::pow(h, 0.8), h}), GeometryError);
  }
}
