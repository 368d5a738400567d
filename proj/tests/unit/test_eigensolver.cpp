// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubicpt/eigensolver.hpp"
#include "cubicpt/errors.hpp"
#include "cubicpt/fd_oracle.hpp"
#include "cubicpt/semiclassics.hpp"
#include "cubicpt/sweep.hpp"

using namespace cubicpt;

namespace {

const cplx I{0.0, 1.0};

ShootingConfig real_only() {
  ShootingConfig c;
  c.sample_contour = false;
  return c;
}

// Scaled value and derivative of a glued solution at arc length t.
std::pair<cplx, cplx> scaled(const GluedSolution& g, double t, double m) {
  const auto s = g.evaluate(t);
  const double e = std::exp(s.log_scale - m);
  return {s.value * e, s.derivative * e};
}

}  // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("reference eigenvalues at alpha = 0") {
    const double ref[] = {1.1562670719881, 4.1092287528097, 7.5622738549788};
    for (int n = 1; n <= 3; ++n) {
      const auto r = solve_eigenvalue(n, 0.0, real_only());
      CHECK(std::abs(r.lambda - ref[n - 1]) / ref[n - 1] <= 1e-11);
      CHECK(r.mode == (n <= 2 ? "physical_real_axis" : "semiclassical_contour"));
    }
  }

  TEST_CASE("shooting against the finite-difference oracle") {
    for (double a : {0.0, 1.0}) {
      const auto fd = fd_oracle(a, 4000, 12.0, 3);
      CHECK(fd.collisions.empty());
      for (int n = 1; n <= 3; ++n) {
        const auto r = solve_eigenvalue(n, a, real_only());
        CAPTURE(a);
        CAPTURE(n);
        CHECK(std::abs(r.lambda - fd.lambda[n - 1]) <= 1e-6 * (1.0 + std::abs(r.lambda)));
        CHECK(fd.fine[n - 1].residual <= 1e-8 * std::abs(fd.fine[n - 1].lambda));
      }
    }
  }

  TEST_CASE("finite-difference negative control: a short box misses the spectrum") {
    const auto good = fd_oracle(0.0, 2000, 12.0, 3);
    const auto bad = fd_oracle(0.0, 2000, 3.0, 3, good.lambda);
    CHECK(std::abs(bad.lambda[2] - good.lambda[2]) / std::abs(good.lambda[2]) > 1e-2);
  }

  TEST_CASE("tridiagonal LU with pivoting") {
    const std::vector<cplx> sub = {1.0, 2.0 * I, 3.0}, diag = {1e-14, 1.0, 2.0 + I, 4.0}, sup = {2.0, -1.0, I};
    const TridiagonalLu lu(sub, diag, sup);
    const std::vector<cplx> x = {1.0, -2.0, I, 0.5};
    std::vector<cplx> b(4);
    for (int i = 0; i < 4; ++i) {
      b[i] = diag[i] * x[i];
      if (i > 0) b[i] += sub[i - 1] * x[i - 1];
      if (i < 3) b[i] += sup[i] * x[i + 1];
    }
    const auto y = lu.solve(b);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(y[i] - x[i]) < 1e-12);
  }

  TEST_CASE("real spectrum for nonnegative alpha") {
    for (double a : {0.0, 2.0})
      for (int n : {1, 4, 7}) {
        const auto r = solve_eigenvalue(n, a, real_only());
        CHECK(std::abs(r.lambda.imag()) <= 1e-8 * r.lambda.real());
        CHECK(r.match_residual <= 1e-9);
      }
  }

  TEST_CASE("Bohr-Sommerfeld proximity") {
    for (int n : {2, 5, 8}) {
      const auto r = solve_eigenvalue(n, 1.0, real_only());
      CHECK(std::abs(r.lambda.real() - bs_lambda(n, 1.0)) / r.lambda.real() <= (n >= 5 ? 0.01 : 0.05));
    }
  }

  TEST_CASE("truncation insensitivity") {
    for (int n : {3, 8}) {
      auto c = real_only();
      const auto a = solve_eigenvalue(n, 0.5, c);
      c.x_max = 15.0;
      const auto b = solve_eigenvalue(n, 0.5, c);
      CHECK(std::abs(a.lambda - b.lambda) / std::abs(a.lambda) <= 1e-10);
    }
  }

  TEST_CASE("real-line eigenfunction satisfies the equation") {
    const auto r = solve_eigenvalue(4, 1.0, real_only());
    const auto& g = r.samples_real;
    const double m = g.max_log_abs_value(), h = r.h, d = 1e-3;
    const ModelParams p{r.alpha, h};
    double worst = 0.0;
    for (double t = 2.0; t < g.length() - 2.0; t += 0.37) {
      const double x = t - r.config.x_max;
      const auto [v, dv] = scaled(g, t, m);
      // fourth-order centred difference of the derivative
      const cplx d2 = (-scaled(g, t + 2 * d, m).second + 8.0 * scaled(g, t + d, m).second -
                       8.0 * scaled(g, t - d, m).second + scaled(g, t - 2 * d, m).second) /
                      (12.0 * d);
      const cplx V = potential(x, p) + 1.0 - r.mu;
      worst = std::max(worst, std::abs(h * h * d2 - V * v));
    }
    CHECK(worst <= 1e-8);
    CHECK(r.decay_ratio < 1e-10);
  }

  TEST_CASE("PT structure of the eigenfunction at alpha = 0") {
    const auto r = solve_eigenvalue(4, 0.0, real_only());
    const auto s = export_real_samples(r, 401);
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::abs(s[i].value) > std::abs(s[k].value)) k = i;
    const double peak = std::abs(s[k].value);
    const cplx phase = s[s.size() - 1 - k].value / std::conj(s[k].value);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-7);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].x == doctest::Approx(-s[s.size() - 1 - i].x));
      worst = std::max(worst, std::abs(s[s.size() - 1 - i].value - phase * std::conj(s[i].value)));
    }
    CHECK(worst / peak <= 1e-7);
  }

  TEST_CASE("WKB initial data") {
    const ModelParams p{1.0, 0.08};
    for (auto side : {Side::plus, Side::minus}) {
      const double x = side == Side::plus ? 7.0 : -7.0;
      const auto w = decaying_initial_data(x, p, side);
      const double d = 1e-5;
      const cplx fd = (decaying_initial_data(x + d, p, side).log_value - decaying_initial_data(x - d, p, side).log_value) /
                      (2 * d);
      CHECK(std::abs(fd - w.log_derivative) <= 1e-6 * std::abs(w.log_derivative));
      // Riccati residual of the log-derivative is O(h^2) relative to V / h^2
      const cplx dw = (decaying_initial_data(x + d, p, side).log_derivative -
                       decaying_initial_data(x - d, p, side).log_derivative) /
                      (2 * d);
      const cplx V = potential(x, p);
      CHECK(std::abs(dw + w.log_derivative * w.log_derivative - V / (p.h * p.h)) <= 1e-2 * std::abs(V) / (p.h * p.h));
      CHECK(w.log_value.real() < -50.0);
    }
    CHECK_THROWS_AS(decaying_initial_data(5.0, {0.0, 0.0}, Side::plus), DomainError);
  }

  TEST_CASE("contour continuation reproduces the real-line solution") {
    const auto r = solve_eigenvalue(6, 0.0);
    REQUIRE(r.samples_contour.has_value());
    CHECK(r.samples_contour->junction_mismatch <= 1e-6);
    CHECK(r.contour_ell_f_begin < r.contour_match_arc);
    CHECK(r.contour_match_arc < r.contour_ell_f_end);
    // a second junction point gives the same function
    const auto g = sample_on_contour(r, r.contour, r.contour_ell_f_begin + 0.25 * (r.contour_ell_f_end - r.contour_ell_f_begin));
    CHECK(g.junction_mismatch <= 1e-6);
  }

  TEST_CASE("seeded solve and domain errors") {
    const auto r = solve_eigenvalue(5, 0.0, real_only(), cplx{15.3, 0.0});
    CHECK(r.lambda.real() == doctest::Approx(solve_eigenvalue(5, 0.0, real_only()).lambda.real()).epsilon(1e-12));
    CHECK_THROWS_AS(solve_eigenvalue(0, 0.0), DomainError);
    CHECK_THROWS_AS(export_real_samples(r, 1), DomainError);
    const auto s = export_real_samples(r, 11);
    CHECK(s.size() == 11);
    CHECK(s.front().x == doctest::Approx(-r.config.x_max));
  }

  TEST_CASE("sweep: branch event of the lowest pair and conjugate symmetry") {
    std::vector<double> grid;
    for (int k = 0; k <= 16; ++k) grid.push_back(-3.2 * k / 16.0);
    const auto s = spectrum_sweep(grid, 3);
    CHECK(s.failures.empty());
    REQUIRE(s.events.size() == 1);
    const auto& e = s.events.front();
    CHECK(e.label == 1);
    CHECK(e.alpha_complex < e.alpha_real);
    CHECK(e.alpha_real - e.alpha_complex <= 1e-6);
    CHECK(e.alpha_real == doctest::Approx(-2.61180915).epsilon(1e-6));
    for (const auto& p : s.points) {
      if (p.alpha >= 0.0) CHECK(std::abs(p.lambda[0].imag()) <= 1e-8 * p.lambda[0].real());
      if (p.alpha < e.alpha_complex) {
        CHECK(p.lambda[0].imag() > 1e-3);
        CHECK(std::abs(p.lambda[1] - std::conj(p.lambda[0])) <= 1e-8 * std::abs(p.lambda[0]));
        CHECK(std::abs(p.lambda[2].imag()) <= 1e-8 * p.lambda[2].real());
      }
    }
  }
}
