// SPDX-License-Identifier: Apache-2.0
#include "cli/records.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

namespace cubicpt::cli {

namespace {

const char* label_name(TurningLabel l) {
  switch (l) {
    case TurningLabel::plus: return "x_plus";
    case TurningLabel::minus: return "x_minus";
    default: return "x_i";
  }
}

cplx complex_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

double number_or_nan(const Json& j) { return j.is_null() ? NAN : j.get<double>(); }

}  // namespace

Json constants_json() {
  const auto& k = constants();
  const auto ell = action_ellf({0.0, 0.0});
  Json j;
  j["C"] = k.C;
  j["C_closed"] = k.C_closed;
  j["C_discrepancy"] = std::abs(k.C - k.C_closed);
  j["r"] = k.r;
  j["r_closed"] = k.r_closed;
  j["r_discrepancy"] = std::abs(k.r - k.r_closed);
  j["c"] = k.c;
  j["c_log"] = k.c_log;
  j["c_discrepancy"] = std::abs(k.c - k.c_log);
  j["growth_rate"] = k.growth_rate;
  j["norm_prefactor"] = k.norm_prefactor;
  j["sqrt3_C"] = std::sqrt(3.0) * k.C;
  j["action_ellf_imag"] = ell.imag();
  j["action_discrepancy"] = std::abs(ell.imag() - std::sqrt(3.0) * k.C);
  return j;
}

CsvTable constants_csv(const Json& j) {
  std::vector<std::string> head;
  for (auto it = j.begin(); it != j.end(); ++it) head.push_back(it.key());
  CsvTable t(head);
  t.row();
  for (auto it = j.begin(); it != j.end(); ++it) t.add(it.value().get<double>());
  return t;
}

Json instability_json(const InstabilityRecord& r) {
  Json j;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["lambda"] = complex_json(r.lambda);
  j["h"] = r.h;
  j["norm_sq"] = r.norm_sq;
  j["self_pairing"] = complex_json(r.self_pairing);
  j["self_pairing_contour"] = complex_json(r.self_pairing_contour);
  j["kappa"] = r.kappa;
  j["kappa_contour"] = r.kappa_contour;
  j["log_kappa"] = r.log_kappa;
  j["quad_err"] = r.quadrature_error;
  j["quad_err_contour"] = r.quadrature_error_contour;
  j["noise_floor"] = r.noise_floor;
  j["precision"] = r.precision;
  return j;
}

InstabilityRecord instability_from_json(const Json& j) {
  InstabilityRecord r;
  r.n = j.at("n").get<int>();
  r.alpha = j.at("alpha").get<double>();
  r.lambda = complex_from(j.at("lambda"));
  r.h = j.at("h").get<double>();
  r.norm_sq = j.at("norm_sq").get<double>();
  r.self_pairing = complex_from(j.at("self_pairing"));
  r.self_pairing_contour = complex_from(j.at("self_pairing_contour"));
  r.kappa = j.at("kappa").get<double>();
  r.kappa_contour = number_or_nan(j.at("kappa_contour"));
  r.log_kappa = j.at("log_kappa").get<double>();
  r.quadrature_error = j.at("quad_err").get<double>();
  r.quadrature_error_contour = number_or_nan(j.at("quad_err_contour"));
  r.noise_floor = j.at("noise_floor").get<double>();
  r.precision = j.at("precision").get<std::string>();
  return r;
}

std::vector<std::string> instability_csv_header() {
  return {"n", "alpha", "lambda_re", "lambda_im", "norm_sq", "self_pairing_re", "self_pairing_im",
          "kappa", "kappa_contour", "log_kappa", "quad_err"};
}

void instability_csv_row(CsvTable& t, const Json& j) {
  t.row()
      .add(j.at("n").get<int>())
      .add(j.at("alpha").get<double>())
      .add(j.at("lambda").at(0).get<double>())
      .add(j.at("lambda").at(1).get<double>())
      .add(j.at("norm_sq").get<double>())
      .add(j.at("self_pairing").at(0).get<double>())
      .add(j.at("self_pairing").at(1).get<double>())
      .add(j.at("kappa").get<double>())
      .add(number_or_nan(j.at("kappa_contour")))
      .add(j.at("log_kappa").get<double>())
      .add(j.at("quad_err").get<double>());
}

Json fit_json(const GrowthFit& f) {
  Json j;
  j["alpha"] = f.alpha;
  j["n_range"] = Json::array({f.n_min, f.n_max});
  j["slope"] = f.slope;
  j["alpha_coeff"] = f.alpha_coeff;
  j["offset"] = f.offset;
  j["residual_rms"] = f.residual_rms;
  j["normalized_log_kappa"] = f.normalized;
  j["cauchy_differences"] = f.cauchy;
  j["reference_slope"] = std::numbers::pi / std::sqrt(3.0);
  return j;
}

Json eigen_json(const EigenRecord& r) {
  Json j;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["lambda"] = complex_json(r.lambda);
  j["h"] = r.h;
  j["mu"] = r.mu;
  j["match_residual"] = r.match_residual;
  j["iterations"] = r.iterations;
  j["mode"] = r.mode;
  j["normalization"] = r.normalization;
  j["decay_ratio"] = r.decay_ratio;
  j["x_max"] = r.config.x_max;
  j["tol_ode"] = r.config.tol_ode;
  j["real_junction_mismatch"] = r.samples_real.junction_mismatch;
  j["real_ode_error"] = std::max(r.samples_real.left.error_estimate(), r.samples_real.right.error_estimate());
  j["real_samples"] = r.samples_real.left.samples().size() + r.samples_real.right.samples().size();
  if (r.samples_contour) {
    j["contour_junction_mismatch"] = r.samples_contour->junction_mismatch;
    j["contour_length"] = r.contour.length();
    j["contour_flagged"] = r.samples_contour->junction_mismatch > 1e-8;
  }
  return j;
}

Json path_json(const ComplexPath& p) {
  Json a = Json::array();
  if (p.segment_count() == 0) return a;
  for (cplx v : p.vertices()) a.push_back(complex_json(v));
  return a;
}

Json line_json(const StokesLine& l) {
  Json j;
  j["kind"] = l.kind == LineKind::stokes ? "stokes" : "anti_stokes";
  j["origin"] = label_name(l.origin);
  switch (l.terminal) {
    case TerminalKind::turning_point: j["terminal"] = label_name(l.terminal_point); break;
    case TerminalKind::asymptotic: j["terminal"] = "D" + std::to_string(l.direction); break;
    default: j["terminal"] = "truncated";
  }
  j["direction"] = l.direction;
  j["closure_gap"] = l.closure_gap;
  j["polyline"] = path_json(l.polyline);
  return j;
}

Json diagram_json(const StokesDiagram& d) {
  Json j;
  j["alpha"] = d.params.alpha;
  j["h"] = d.params.h;
  j["turning_points"] = {{"x_plus", complex_json(d.turning.plus)},
                         {"x_minus", complex_json(d.turning.minus)},
                         {"x_i", complex_json(d.turning.imag)}};
  const auto c = d.census();
  j["census"] = Json(std::vector<int>(c.begin(), c.end()));
  j["unbounded_lines"] = d.lines.size();
  j["ell_f"] = line_json(d.ell_f);
  j["ell_i"] = line_json(d.ell_i);
  j["ell_tilde_plus"] = line_json(d.ell_tilde_plus);
  j["ell_tilde_minus"] = line_json(d.ell_tilde_minus);
  Json lines = Json::array();
  for (const auto& l : d.lines) lines.push_back(line_json(l));
  j["lines"] = lines;
  j["contour_L"] = path_json(d.contour_L);
  j["ell_f_tube_excess"] = d.ell_f_tube_excess;
  j["ell_i_tube_excess"] = d.ell_i_tube_excess;
  return j;
}

Json sweep_json(const SweepResult& s) {
  Json j;
  Json alpha = Json::array();
  for (const auto& p : s.points) alpha.push_back(p.alpha);
  j["alpha"] = alpha;
  Json curves = Json::array();
  const std::size_t n_max = s.points.empty() ? 0 : s.points[0].lambda.size();
  for (std::size_t k = 0; k < n_max; ++k) {
    Json re = Json::array(), im = Json::array();
    for (const auto& p : s.points) {
      re.push_back(p.lambda[k].real());
      im.push_back(p.lambda[k].imag());
    }
    curves.push_back({{"n", k + 1}, {"re", re}, {"im", im}});
  }
  j["curves"] = curves;
  Json ev = Json::array();
  for (const auto& e : s.events)
    ev.push_back({{"pair", Json::array({e.label, e.label + 1})},
                  {"alpha_real", e.alpha_real},
                  {"alpha_complex", e.alpha_complex},
                  {"alpha_crit", 0.5 * (e.alpha_real + e.alpha_complex)},
                  {"bracket_width", std::abs(e.alpha_real - e.alpha_complex)},
                  {"lambda", complex_json(e.lambda)}});
  j["branch_events"] = ev;
  Json fl = Json::array();
  for (const auto& f : s.failures) fl.push_back({{"n", f.label}, {"alpha", f.alpha}, {"message", f.message}});
  j["failures"] = fl;
  return j;
}

std::string samples_binary(const std::vector<GridSample>& s) {
  std::string out;
  out.resize(s.size() * 6 * sizeof(double));
  char* p = out.data();
  for (const auto& g : s) {
    const double v[6] = {g.x, 0.0, g.value.real(), g.value.imag(), g.derivative.real(), g.derivative.imag()};
    std::memcpy(p, v, sizeof v);
    p += sizeof v;
  }
  return out;
}

}  // namespace cubicpt::cli
