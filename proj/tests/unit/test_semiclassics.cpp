// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubicpt/errors.hpp"
#include "cubicpt/numkit/special.hpp"
#include "cubicpt/semiclassics.hpp"
#include "cubicpt/stokes.hpp"

using namespace cubicpt;
using std::numbers::pi;

TEST_SUITE("semiclassics") {
  TEST_CASE("constants: quadrature against Gamma closed forms") {
    const auto& k = constants();
    CHECK(std::abs(k.C - k.C_closed) <= 1e-12);
    CHECK(std::abs(k.r - k.r_closed) <= 1e-12);
    CHECK(std::abs(k.c - k.c_log) <= 1e-12);
    CHECK(k.C == doctest::Approx(0.8413092631952727).epsilon(1e-14));
    CHECK(k.r == doctest::Approx(0.4311849265382985).epsilon(1e-14));
    CHECK(k.growth_rate == doctest::Approx(pi / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(k.norm_prefactor == doctest::Approx(std::sqrt(2.0) / 2 * cubicpt::gamma(0.25)).epsilon(1e-14));
    // c = 2 r (pi / (sqrt 3 C))^{1/5}
    CHECK(k.c == doctest::Approx(2 * k.r * std::pow(pi / (std::sqrt(3.0) * k.C), 0.2)).epsilon(1e-13));
  }

  TEST_CASE("action along ell_f: limit value and PT reality") {
    const auto& k = constants();
    CHECK(std::abs(action_ellf({0.0, 0.0}) - cplx{0.0, std::sqrt(3.0) * k.C}) <= 1e-9);
    for (double a : {0.0, 1.0, 2.0})
      for (double h : {0.0, 0.1, 0.2, 0.3}) {
        CAPTURE(a);
        CAPTURE(h);
        const ModelParams p{a, h};
        const cplx s = action_ellf(p);
        CHECK(std::abs(s.real()) <= 1e-10);
        // the radial route and the traced Stokes line agree
        const auto d = build_diagram(p, {.unbounded_lines = false});
        CHECK(std::abs(action_along(p, d.ell_f.polyline) - s) <= 1e-7);
      }
  }

  TEST_CASE("Bohr-Sommerfeld: residual and monotonicity") {
    for (double a : {0.0, 1.0, 2.0}) {
      double h_prev = INFINITY, l_prev = 0.0;
      for (int n = 0; n <= 20; ++n) {
        const auto s = bs_solve(n, a);
        CHECK(std::abs(action_ellf({a, s.h}).imag() - pi * (n + 0.5) * s.h) <= 1e-12);
        CHECK(s.h < h_prev);
        CHECK(s.lambda_bs > l_prev);
        CHECK(s.lambda_bs == doctest::Approx(std::pow(s.h, -1.2)).epsilon(1e-14));
        h_prev = s.h;
        l_prev = s.lambda_bs;
      }
    }
    CHECK(bs_lambda(5, 1.0) == doctest::Approx(bs_solve(4, 1.0).lambda_bs).epsilon(1e-15));
  }

  TEST_CASE("Bohr-Sommerfeld: expansion of the action in h") {
    const auto& k = constants();
    for (double a : {0.0, 1.0, 2.0})
      for (int n = 3; n <= 20; ++n) {
        const double h = bs_solve(n, a).h;
        const double rest =
            action_ellf({a, h}).imag() - std::sqrt(3.0) * k.C + std::sqrt(3.0) * a * k.r * std::pow(h, 0.8);
        CHECK(std::abs(rest) <= std::pow(h, 1.6));
      }
  }

  TEST_CASE("Bohr-Sommerfeld: two-term expansion") {
    for (double a : {0.0, 1.0, 2.0})
      for (int n : {10, 20, 40}) {
        const double h = bs_solve(n, a).h;
        CHECK(std::abs(bs_two_term(n, a) - h) / h <= 5.0 * std::pow(h, 1.6));
      }
    // at alpha = 0 the first term is exact
    CHECK(bs_two_term(7, 0.0) == doctest::Approx(bs_solve(7, 0.0).h).epsilon(1e-12));
  }

  TEST_CASE("index offset calibration") {
    const std::vector<std::pair<int, double>> ev = {
        {1, 1.1562670719881}, {2, 4.1092287528097}, {3, 7.5622738549788}, {4, 11.3144218202}};
    CHECK(calibrate_bs_offset(ev, 0.0) == kBsIndexOffset);
  }

  TEST_CASE("predictions in log space") {
    const auto& k = constants();
    const double h = 0.05;
    CHECK(predict_log_norm_sq(1.0, h) ==
          doctest::Approx(std::log(k.norm_prefactor) + 0.25 * std::log(h) + k.C / h + k.r * std::pow(h, -0.2)));
    CHECK(std::isinf(predict_norm_sq(0.0, 1e-4)));
    CHECK(std::isfinite(predict_log_norm_sq(0.0, 1e-4)));
    CHECK(predict_log_kappa(9, 2.0) - predict_log_kappa(8, 2.0) ==
          doctest::Approx(k.growth_rate - 0.25 * std::log(9.0 / 8.0) + 2.0 * k.c * (std::pow(9.0, 0.2) - std::pow(8.0, 0.2))));
    CHECK_THROWS_AS(predict_log_norm_sq(0.0, 0.0), DomainError);
  }
}
