// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubicpt/eigensolver.hpp"
#include "cubicpt/errors.hpp"
#include "cubicpt/instability.hpp"
#include "cubicpt/semiclassics.hpp"

using namespace cubicpt;
using std::numbers::pi;

namespace {

const std::vector<InstabilityRecord>& alpha0_records() {
  static const auto records = [] {
    std::vector<InstabilityRecord> r;
    for (int n = 3; n <= 9; ++n) r.push_back(kappa(solve_eigenvalue(n, 0.0)));
    return r;
  }();
  return records;
}

InstabilityRecord synthetic(int n, double alpha, double slope, double coeff, double offset) {
  InstabilityRecord r;
  r.n = n;
  r.alpha = alpha;
  r.log_kappa = slope * n - 0.25 * std::log(double(n)) + alpha * coeff * std::pow(n, 0.2) + offset;
  r.kappa = std::exp(r.log_kappa);
  return r;
}

}  // namespace

TEST_SUITE("instability") {
  TEST_CASE("kappa is invariant under rescaling of the eigenfunction") {
    const auto rec = solve_eigenvalue(5, 1.0);
    const auto a = kappa(rec);
    KappaOptions o;
    o.scale = cplx{3.0, -2.0};
    const auto b = kappa(rec, o);
    CHECK(std::abs(b.kappa - a.kappa) / a.kappa <= 1e-12);
    CHECK(std::abs(b.kappa_contour - a.kappa_contour) / a.kappa_contour <= 1e-12);
    CHECK(b.norm_sq == doctest::Approx(13.0 * a.norm_sq).epsilon(1e-12));
  }

  TEST_CASE("pairing integrals: orientation and budgets") {
    const auto rec = solve_eigenvalue(4, 0.0, {.sample_contour = false});
    const auto p = pairing_integrals(rec.samples_real);
    CHECK(p.norm_sq > 0.0);
    CHECK(p.rule_error < 1e-8 * p.norm_sq);
    CHECK(p.rounding > 0.0);
    CHECK(p.intervals > 10);
    // at alpha = 0 the PT structure makes the pairing real up to the phase of the eigenfunction
    CHECK(std::abs(p.pairing) <= p.norm_sq);
    const auto dd = pairing_integrals(rec.samples_real, Precision::double_double);
    CHECK(std::abs(dd.pairing - p.pairing) <= 1e-12 * p.norm_sq);
  }

  TEST_CASE("records at alpha = 0: monotone explosion, budgets, homotopy") {
    const auto& r = alpha0_records();
    for (std::size_t i = 0; i < r.size(); ++i) {
      CAPTURE(r[i].n);
      CHECK(r[i].kappa >= 1.0 - 1e-9);
      CHECK(r[i].log_kappa == doctest::Approx(std::log(r[i].kappa)).epsilon(1e-14));
      CHECK(r[i].quadrature_error <= 0.1 * std::abs(r[i].self_pairing));
      CHECK(std::abs(r[i].self_pairing - r[i].self_pairing_contour) <=
            r[i].quadrature_error + r[i].quadrature_error_contour);
      CHECK(std::abs(r[i].kappa - r[i].kappa_contour) / r[i].kappa <=
            10.0 * (r[i].quadrature_error + r[i].quadrature_error_contour) / std::abs(r[i].self_pairing));
      if (i > 0) CHECK(r[i].kappa > r[i - 1].kappa);
    }
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      if (r[i].n >= 6) CHECK((r[i + 1].log_kappa - r[i].log_kappa) == doctest::Approx(1.7).epsilon(0.2 / 1.7));
  }

  TEST_CASE("denominator constancy") {
    const auto s = denominator_constancy(alpha0_records());
    CHECK(s.nonzero);
    CHECK(s.points.size() == alpha0_records().size());
    CHECK(s.max_min_ratio < 1.2);
    CHECK(s.decreasing_changes);
    for (const auto& p : s.points) CHECK(std::abs(p.d) > 1.0);
    auto bare = alpha0_records();
    bare.front().self_pairing_contour = 0.0;
    bare.front().kappa_contour = 0.0;
    CHECK_THROWS_AS(denominator_constancy(bare), DomainError);
  }

  TEST_CASE("norm of the anchored eigenfunction") {
    const auto& r = alpha0_records().back();
    const double ratio = r.norm_sq / predict_norm_sq(0.0, r.h);
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.25);
  }

  TEST_CASE("growth fit recovers synthetic data") {
    std::vector<InstabilityRecord> a, b;
    for (int n = 6; n <= 12; ++n) {
      a.push_back(synthetic(n, 0.0, 1.8, 1.0, -0.7));
      b.push_back(synthetic(n, 2.0, 1.8, 1.1, -0.7));
    }
    const auto f = growth_fit(a);
    CHECK(f.slope == doctest::Approx(1.8).epsilon(1e-10));
    CHECK(f.offset == doctest::Approx(-0.7).epsilon(1e-10));
    CHECK(f.residual_rms < 1e-10);
    CHECK(f.cauchy.size() == 6);
    CHECK(f.normalized.size() == 7);
    const auto j = growth_fit_joint(a, b);
    CHECK(j.slope == doctest::Approx(1.8).epsilon(1e-9));
    CHECK(j.alpha_coeff == doctest::Approx(1.1).epsilon(1e-9));
  }

  TEST_CASE("growth fit rejects degenerate input") {
    std::vector<InstabilityRecord> a;
    for (int n = 6; n <= 9; ++n) a.push_back(synthetic(n, 0.0, 1.8, 0.0, 0.0));
    CHECK_THROWS_AS(growth_fit(a), DomainError);
    a.push_back(synthetic(10, 1.0, 1.8, 0.0, 0.0));
    CHECK_THROWS_AS(growth_fit(a), DomainError);
    std::vector<InstabilityRecord> z;
    for (int n = 6; n <= 10; ++n) z.push_back(synthetic(n, 0.0, 1.8, 0.0, 0.0));
    // equal alpha on both sides leaves the n^{1/5} column undetermined
    CHECK_THROWS_AS(growth_fit_joint(z, z), DomainError);
    CHECK_THROWS_AS(least_squares({{1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}}, {1.0, 2.0, 3.0}), NumericError);
    const auto x = least_squares({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {1.0, 2.0, 3.0});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(2.0));
  }

  TEST_CASE("kappa options are validated") {
    const auto rec = solve_eigenvalue(3, 0.0);
    KappaOptions o;
    o.max_relative_error = 0.5;
    CHECK_THROWS_AS(kappa(rec, o), DomainError);
    o.max_relative_error = 1e-14;
    CHECK_THROWS_AS(kappa(rec, o), PrecisionError);
  }

  TEST_CASE("WKB and far field at moderate n") {
    const auto rec = solve_eigenvalue(6, 0.0);
    const auto w = wkb_validate(rec, {2.5, 6.0, 0.0, 0.0}, 12);
    CHECK(w.deviation <= 0.05);
    CHECK(w.points > 0);
    CHECK(w.tube_distance >= 0.1);
    const auto off = wkb_validate(rec, {2.5, 4.0, -0.3, 0.3}, 4);
    CHECK(off.deviation <= 0.05);
    CHECK_THROWS_AS(wkb_validate(rec, {-0.5, 0.5, -0.6, -0.4}, 4), GeometryError);
    CHECK(far_field_amplitude(rec).variation <= 0.02);
  }

  TEST_CASE("Airy connection at moderate n") {
    for (int n : {6, 7}) {
      const auto a = airy_connection_check(solve_eigenvalue(n, 0.0));
      CAPTURE(n);
      CHECK(std::abs(a.ratio_plus - 1.0) <= 0.15);
      CHECK(a.modulus_mismatch <= 0.15);
      CHECK(a.phase_error <= 0.3);
      CHECK(a.points_plus > 3);
      CHECK(a.points_minus > 3);
      const double expected = std::remainder((n - 1) * pi + pi / 2, 2 * pi);
      CHECK(std::abs(std::remainder(a.expected_phase - expected, 2 * pi)) < 1e-12);
    }
  }
}
