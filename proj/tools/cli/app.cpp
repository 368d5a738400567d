// SPDX-License-Identifier: Apache-2.0
#include "cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli/cache.hpp"
#include "cli/output.hpp"
#include "cli/records.hpp"
#include "cli/svg.hpp"
#include "cubicpt/errors.hpp"

namespace cubicpt::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  double tol_ode = 1e-12;
  double tol_quad = 0.1;
  std::string cache;
  int jobs = 1;
  std::string out = "json";
  std::string svg;
  std::string seed_file;
  std::string output;
};

struct Context {
  Globals g;
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
  Cache cache;
  std::map<std::pair<int, double>, cplx> seeds;
  int code = kOk;

  void raise(int c) { code = std::max(code, c); }
};

int code_for(const std::exception& e) {
  if (dynamic_cast<const PrecisionError*>(&e)) return kPrecision;
  if (dynamic_cast<const SolverError*>(&e) || dynamic_cast<const NumericError*>(&e)) return kSolver;
  if (dynamic_cast<const GeometryError*>(&e)) return kGeometry;
  return kFailed;
}

const char* code_name(int c) {
  switch (c) {
    case kPrecision: return "precision_ceiling";
    case kSolver: return "solver_failure";
    case kGeometry: return "geometry_failure";
    default: return "failed";
  }
}

// Runs f(i) for i in [0, count) on `jobs` threads; f must not throw.
void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) f(i);
  };
  std::vector<std::thread> pool;
  const std::size_t extra = std::min<std::size_t>(std::max(jobs, 1), count);
  for (std::size_t t = 1; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

Json tolerances(const Context& c) { return {{"tol_ode", c.g.tol_ode}, {"tol_quad", c.g.tol_quad}}; }

// Arguments that select the computation; output paths, cache and job count are excluded.
std::string config_string(const Context& c) {
  std::string s;
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    const auto& a = c.args[i];
    if (a == "--cache" || a == "--jobs" || a == "--output" || a == "--svg" || a == "--samples") {
      ++i;
      continue;
    }
    if (a.rfind("--cache=", 0) == 0 || a.rfind("--jobs=", 0) == 0 || a.rfind("--output=", 0) == 0 ||
        a.rfind("--svg=", 0) == 0 || a.rfind("--samples=", 0) == 0)
      continue;
    s += a + "\x1f";
  }
  return s;
}

Json manifest(const Context& c) {
  std::string line = "cubic-pt";
  for (const auto& a : c.args) line += " " + a;
  Json m;
  m["command_line"] = line;
  m["config_hash"] = content_hash(config_string(c) + dump_json(tolerances(c), 0) + kVersion);
  m["artifact_version"] = kVersion;
  m["timestamp"] = utc_timestamp();
  m["tolerances"] = tolerances(c);
  return m;
}

void write_file(const Context& c, const std::string& path, const std::string& data) {
  write_atomic(path, data);
  write_atomic(path + ".manifest.json", dump_json(manifest(c)));
}

void emit(Context& c, const std::string& text) {
  if (c.g.output.empty()) {
    c.out << text;
  } else {
    write_file(c, c.g.output, text);
  }
}

void emit_svg(Context& c, const SvgPlot& p) {
  if (!c.g.svg.empty()) write_file(c, c.g.svg, p.str());
}

void load_seeds(Context& c) {
  if (c.g.seed_file.empty()) return;
  std::ifstream in(c.g.seed_file);
  if (!in) throw DomainError("cannot read seed file " + c.g.seed_file);
  const auto j = Json::parse(in);
  for (const auto& s : j.at("seeds"))
    c.seeds[{s.at("n").get<int>(), s.at("alpha").get<double>()}] = {s.at("lambda").at(0).get<double>(),
                                                                     s.at("lambda").at(1).get<double>()};
}

std::optional<cplx> seed_for(const Context& c, int n, double alpha) {
  auto it = c.seeds.find({n, alpha});
  if (it == c.seeds.end()) return std::nullopt;
  return it->second;
}

ShootingConfig shooting(const Context& c, bool contour) {
  ShootingConfig s;
  s.tol_ode = c.g.tol_ode;
  s.sample_contour = contour;
  return s;
}

// ---------------------------------------------------------------- records with cache

struct Outcome {
  std::optional<Json> record;
  int code = kOk;
  std::string message;
};

Outcome cached(Context& c, const std::string& op, const Json& params, const std::function<Json()>& compute) {
  const std::string key = Cache::key(op, params);
  if (auto hit = c.cache.get(key)) return {Json::parse(*hit), kOk, ""};
  try {
    const std::string payload = dump_json(compute(), 0);
    c.cache.put(key, op, payload);
    return {Json::parse(payload), kOk, ""};
  } catch (const std::exception& e) {
    return {std::nullopt, code_for(e), e.what()};
  }
}

Outcome kappa_record(Context& c, int n, double alpha, Precision precision) {
  const auto seed = seed_for(c, n, alpha);
  Json params = {{"alpha", alpha},
                 {"n", n},
                 {"precision", precision == Precision::double_double ? "dd" : "double"},
                 {"tolerances", tolerances(c)}};
  if (seed) params["seed"] = complex_json(*seed);
  return cached(c, "kappa", params, [&] {
    const auto rec = solve_eigenvalue(n, alpha, shooting(c, true), seed);
    KappaOptions o;
    o.precision = precision;
    o.max_relative_error = c.g.tol_quad;
    return instability_json(kappa(rec, o));
  });
}

Outcome eigen_record(Context& c, int n, double alpha) {
  const auto seed = seed_for(c, n, alpha);
  Json params = {{"alpha", alpha}, {"n", n}, {"tolerances", tolerances(c)}};
  if (seed) params["seed"] = complex_json(*seed);
  return cached(c, "eig", params, [&] { return eigen_json(solve_eigenvalue(n, alpha, shooting(c, true), seed)); });
}

// Per-record invariants: kappa >= 1 and the two denominators agree within ten error budgets.
bool record_budgets_ok(const InstabilityRecord& r) {
  if (!(r.kappa >= 1.0 - 1e-9)) return false;
  if (!(std::isfinite(r.kappa_contour) && r.kappa_contour > 0.0)) return true;
  const double budget = (r.quadrature_error + r.quadrature_error_contour) / std::abs(r.self_pairing);
  return std::abs(r.kappa - r.kappa_contour) / r.kappa <= 10.0 * budget;
}

// ---------------------------------------------------------------- commands

int cmd_constants(Context& c) {
  const auto j = constants_json();
  emit(c, c.g.out == "csv" ? constants_csv(j).str() : dump_json(j));
  const bool ok = j["C_discrepancy"].get<double>() <= 1e-12 && j["r_discrepancy"].get<double>() <= 1e-12 &&
                  j["action_discrepancy"].get<double>() <= 1e-9;
  return ok ? kOk : kFailed;
}

struct KappaArgs {
  double alpha = 0.0;
  int n_min = 4, n_max = 12;
  std::string precision = "double";
};

int cmd_kappa(Context& c, const KappaArgs& a) {
  const Precision prec = a.precision == "dd" ? Precision::double_double : Precision::double_;
  const int ceiling = prec == Precision::double_double ? 20 : 12;
  if (a.n_min < 1 || a.n_min > a.n_max) {
    c.err << "kappa: need 1 <= n-min <= n-max\n";
    return kFailed;
  }
  if (a.n_max > ceiling) {
    c.err << "kappa: n-max " << a.n_max << " exceeds the " << a.precision << " precision ceiling " << ceiling << "\n";
    return kPrecision;
  }
  const std::size_t count = std::size_t(a.n_max - a.n_min + 1);
  std::vector<Outcome> res(count);
  parallel_for(c.g.jobs, count, [&](std::size_t i) { res[i] = kappa_record(c, a.n_min + int(i), a.alpha, prec); });

  Json records = Json::array(), failures = Json::array();
  std::vector<InstabilityRecord> ok;
  for (std::size_t i = 0; i < count; ++i) {
    const int n = a.n_min + int(i);
    if (!res[i].record) {
      failures.push_back({{"n", n}, {"code", code_name(res[i].code)}, {"message", res[i].message}});
      c.raise(res[i].code);
      continue;
    }
    Json r = *res[i].record;
    const auto rec = instability_from_json(r);
    const bool budget = record_budgets_ok(rec);
    if (!budget) c.raise(kPrecision);
    r["budget_ok"] = budget;
    records.push_back(r);
    ok.push_back(rec);
  }
  Json fit = nullptr;
  std::optional<GrowthFit> gf;
  if (ok.size() >= 5) {
    try {
      gf = growth_fit(ok);
      fit = fit_json(*gf);
    } catch (const std::exception& e) {
      fit = {{"error", e.what()}};
    }
  }
  if (c.g.out == "csv") {
    CsvTable t(instability_csv_header());
    for (const auto& r : records) instability_csv_row(t, r);
    emit(c, t.str());
  } else {
    emit(c, dump_json({{"records", records}, {"fit", fit}, {"failures", failures}}));
  }
  if (!c.g.svg.empty()) {
    SvgPlot p("log kappa_n, alpha = " + format_double(a.alpha, 6), "n", "log kappa_n");
    std::vector<std::pair<double, double>> pts, line;
    double off = 0.0;
    const double s = std::numbers::pi / std::sqrt(3.0);
    for (const auto& r : ok) {
      pts.emplace_back(r.n, r.log_kappa);
      off += r.log_kappa + 0.25 * std::log(double(r.n)) - s * r.n;
    }
    if (!ok.empty()) off /= double(ok.size());
    for (const auto& r : ok) line.emplace_back(r.n, s * r.n - 0.25 * std::log(double(r.n)) + off);
    p.polyline(line, "#c0392b", 1.5, true);
    p.markers(pts, "#1f4e9c", 4.0);
    if (gf) p.label(a.n_min, pts.empty() ? 0.0 : pts.back().second, "fitted slope " + format_double(gf->slope, 5));
    emit_svg(c, p);
  }
  return c.code;
}

struct Fig1Args {
  double alpha_min = -5.0, alpha_max = 1.0;
  int steps = 60, n_max = 6;
};

int cmd_fig1(Context& c, const Fig1Args& a) {
  if (!(a.alpha_min < a.alpha_max) || a.steps < 16 || a.n_max < 2) {
    c.err << "fig1: need alpha-min < alpha-max, steps >= 16, n-max >= 2\n";
    return kFailed;
  }
  std::vector<double> grid;
  for (int k = 0; k <= a.steps; ++k) grid.push_back(a.alpha_max - (a.alpha_max - a.alpha_min) * k / a.steps);
  SweepOptions o;
  o.shooting = shooting(c, false);
  const auto s = spectrum_sweep(grid, a.n_max, o);
  for (const auto& f : s.failures) c.err << "fig1: label " << f.label << " lost at alpha " << f.alpha << ": " << f.message << "\n";
  if (!s.failures.empty()) c.raise(kSolver);
  if (c.g.out == "csv") {
    CsvTable t({"alpha", "n", "lambda_re", "lambda_im"});
    for (const auto& p : s.points)
      for (std::size_t k = 0; k < p.lambda.size(); ++k)
        t.row().add(p.alpha).add(int(k + 1)).add(p.lambda[k].real()).add(p.lambda[k].imag());
    emit(c, t.str());
  } else {
    emit(c, dump_json(sweep_json(s)));
  }
  if (!c.g.svg.empty()) {
    SvgPlot p("Re lambda_n(alpha)", "alpha", "Re lambda");
    static const char* colors[] = {"#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#2c3e50"};
    for (int k = 0; k < a.n_max; ++k) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& q : s.points) pts.emplace_back(q.alpha, q.lambda[k].real());
      p.polyline(pts, colors[k % 7]);
    }
    for (const auto& e : s.events) {
      const double ac = 0.5 * (e.alpha_real + e.alpha_complex);
      p.markers({{ac, e.lambda.real()}}, "#000", 4.0);
      p.label(ac, e.lambda.real(), " branch " + std::to_string(e.label) + "-" + std::to_string(e.label + 1));
    }
    emit_svg(c, p);
  }
  return c.code;
}

int cmd_stokes(Context& c, double alpha, double h) {
  const auto d = build_diagram({alpha, h});
  emit(c, dump_json(diagram_json(d)));
  if (!c.g.svg.empty()) {
    SvgPlot p("Stokes lines, alpha = " + format_double(alpha, 6) + ", h = " + format_double(h, 6), "Re x", "Im x");
    p.window(-4.0, 4.0, -3.5, 4.5);
    p.equal_aspect(true);
    auto pts = [](const ComplexPath& path) {
      std::vector<std::pair<double, double>> v;
      if (path.segment_count() == 0) return v;
      for (cplx z : path.vertices()) v.emplace_back(z.real(), z.imag());
      return v;
    };
    for (int k = 0; k < 5; ++k) {
      const double th = asymptotic_angle(LineKind::stokes, k);
      p.polyline({{0.0, 0.0}, {8.0 * std::cos(th), 8.0 * std::sin(th)}}, "#bbbbbb", 1.0, true);
      p.label(3.6 * std::cos(th), 3.6 * std::sin(th), "D" + std::to_string(k), "#777");
    }
    for (const auto& l : d.lines) p.polyline(pts(l.polyline), "#1f4e9c");
    p.polyline(pts(d.ell_f.polyline), "#c0392b", 2.0);
    p.polyline(pts(d.ell_tilde_plus.polyline), "#27ae60", 1.5, true);
    p.polyline(pts(d.ell_tilde_minus.polyline), "#27ae60", 1.5, true);
    p.markers({{d.turning.plus.real(), d.turning.plus.imag()},
               {d.turning.minus.real(), d.turning.minus.imag()},
               {d.turning.imag.real(), d.turning.imag.imag()}},
              "#000", 4.0);
    emit_svg(c, p);
  }
  return kOk;
}

int cmd_bs(Context& c, double alpha, int n_min, int n_max) {
  if (n_min < 1 || n_min > n_max) {
    c.err << "bs: need 1 <= n-min <= n-max\n";
    return kFailed;
  }
  Json rows = Json::array();
  CsvTable t({"n", "quantum_number", "h", "lambda_bs", "h_two_term", "lambda_two_term", "residual"});
  for (int n = n_min; n <= n_max; ++n) {
    const int q = n + kBsIndexOffset;
    try {
      const auto s = bs_solve(q, alpha);
      const double h2 = bs_two_term(q, alpha);
      const double l2 = h2 > 0.0 ? std::pow(h2, -1.2) : NAN;
      rows.push_back({{"n", n}, {"quantum_number", q}, {"h", s.h}, {"lambda_bs", s.lambda_bs},
                      {"h_two_term", h2}, {"lambda_two_term", l2}, {"residual", s.residual}});
      t.row().add(n).add(q).add(s.h).add(s.lambda_bs).add(h2).add(l2).add(s.residual);
    } catch (const std::exception& e) {
      c.err << "bs: n=" << n << ": " << e.what() << "\n";
      c.raise(code_for(e));
    }
  }
  emit(c, c.g.out == "csv" ? t.str() : dump_json({{"alpha", alpha}, {"index_offset", kBsIndexOffset}, {"levels", rows}}));
  return c.code;
}

int cmd_eig(Context& c, double alpha, int n_min, int n_max, const std::string& samples, int mesh) {
  if (n_min < 1 || n_min > n_max) {
    c.err << "eig: need 1 <= n-min <= n-max\n";
    return kFailed;
  }
  if (!samples.empty()) {
    if (n_min != n_max) {
      c.err << "eig: --samples needs a single n\n";
      return kFailed;
    }
    if (mesh < 2) {
      c.err << "eig: --mesh must be at least 2\n";
      return kFailed;
    }
    try {
      const auto rec = solve_eigenvalue(n_min, alpha, shooting(c, false), seed_for(c, n_min, alpha));
      write_file(c, samples, samples_binary(export_real_samples(rec, std::size_t(mesh))));
    } catch (const std::exception& e) {
      c.err << "eig: " << e.what() << "\n";
      return code_for(e);
    }
  }
  const std::size_t count = std::size_t(n_max - n_min + 1);
  std::vector<Outcome> res(count);
  parallel_for(c.g.jobs, count, [&](std::size_t i) { res[i] = eigen_record(c, n_min + int(i), alpha); });
  Json records = Json::array(), failures = Json::array();
  CsvTable t({"n", "alpha", "lambda_re", "lambda_im", "h", "match_residual", "mode"});
  for (std::size_t i = 0; i < count; ++i) {
    if (!res[i].record) {
      failures.push_back({{"n", n_min + int(i)}, {"code", code_name(res[i].code)}, {"message", res[i].message}});
      c.raise(res[i].code);
      continue;
    }
    const auto& r = *res[i].record;
    records.push_back(r);
    t.row()
        .add(r["n"].get<int>())
        .add(r["alpha"].get<double>())
        .add(r["lambda"][0].get<double>())
        .add(r["lambda"][1].get<double>())
        .add(r["h"].get<double>())
        .add(r["match_residual"].get<double>())
        .add(r["mode"].get<std::string>());
  }
  emit(c, c.g.out == "csv" ? t.str() : dump_json({{"records", records}, {"failures", failures}}));
  return c.code;
}

// ---------------------------------------------------------------- validation

struct Check {
  std::string suite, name;
  double value = NAN;
  std::string threshold;
  bool pass = false;
  std::string error;
};

Json check_json(const Check& k) {
  Json j = {{"suite", k.suite}, {"name", k.name}, {"value", k.value}, {"threshold", k.threshold}, {"pass", k.pass}};
  if (!k.error.empty()) j["error"] = k.error;
  return j;
}

std::vector<Check> run_suite(Context& c, double alpha, int n, const std::string& suite) {
  std::vector<Check> out;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  auto guarded = [&](const std::string& s, const std::string& name, const std::function<void(Check&)>& f) {
    Check k{s, name, NAN, "", false, ""};
    try {
      f(k);
    } catch (const std::exception& e) {
      k.pass = false;
      k.error = e.what();
      c.raise(code_for(e));
    }
    out.push_back(k);
  };
  std::optional<EigenRecord> rec;
  std::string rec_error;
  try {
    rec = solve_eigenvalue(n, alpha, shooting(c, true), seed_for(c, n, alpha));
  } catch (const std::exception& e) {
    rec_error = e.what();
    c.raise(code_for(e));
  }
  auto need = [&]() -> const EigenRecord& {
    if (!rec) throw SolverError("eigenvalue unavailable: " + rec_error);
    return *rec;
  };
  std::optional<InstabilityRecord> kap;
  auto need_kappa = [&]() -> const InstabilityRecord& {
    if (!kap) {
      KappaOptions o;
      o.max_relative_error = c.g.tol_quad;
      kap = kappa(need(), o);
    }
    return *kap;
  };

  if (want("wkb")) {
    guarded("wkb", "real_window_deviation", [&](Check& k) {
      k.threshold = "<= 0.05 on x in [2.5, 6]";
      k.value = wkb_validate(need(), {2.5, 6.0, 0.0, 0.0}, 16).deviation;
      k.pass = k.value <= 0.05;
    });
    guarded("wkb", "far_field_variation", [&](Check& k) {
      k.threshold = "<= 0.02 on x in [8, 12]";
      k.value = far_field_amplitude(need()).variation;
      k.pass = k.value <= 0.02;
    });
  }
  if (want("airy")) {
    std::optional<AiryReport> ar;
    auto airy = [&]() -> const AiryReport& {
      if (!ar) ar = airy_connection_check(need());
      return *ar;
    };
    guarded("airy", "plus_ratio_error", [&](Check& k) {
      k.threshold = "|ratio h^{1/6}/(2 sqrt(pi)) - 1| <= 0.15";
      k.value = std::abs(airy().ratio_plus - 1.0);
      k.pass = k.value <= 0.15;
    });
    guarded("airy", "minus_modulus_mismatch", [&](Check& k) {
      k.threshold = "<= 0.15";
      k.value = airy().modulus_mismatch;
      k.pass = k.value <= 0.15;
    });
    guarded("airy", "minus_phase_error", [&](Check& k) {
      k.threshold = "|arg(r-/r+) - ((n-1) pi + pi/2)| <= 0.3 rad";
      k.value = airy().phase_error;
      k.pass = k.value <= 0.3;
    });
  }
  if (want("homotopy")) {
    guarded("homotopy", "denominator_gap_over_budget", [&](Check& k) {
      const auto& r = need_kappa();
      k.threshold = "|D_real - D_contour| / (err_real + err_contour) <= 1";
      k.value = std::abs(r.self_pairing - r.self_pairing_contour) / (r.quadrature_error + r.quadrature_error_contour);
      k.pass = k.value <= 1.0;
    });
  }
  if (want("bs")) {
    guarded("bs", "relative_error", [&](Check& k) {
      const auto& r = need();
      const double tol = n >= 5 ? 0.01 : 0.05;
      k.threshold = "<= " + format_double(tol, 3);
      if (n < 2) throw DomainError("bs check needs n >= 2");
      k.value = std::abs(r.lambda - bs_lambda(n, alpha)) / std::abs(r.lambda);
      k.pass = k.value <= tol;
    });
  }
  if (want("norm")) {
    guarded("norm", "norm_ratio", [&](Check& k) {
      const auto& r = need_kappa();
      k.threshold = "in [0.8, 1.25]";
      k.value = r.norm_sq / predict_norm_sq(alpha, r.h);
      k.pass = k.value >= 0.8 && k.value <= 1.25;
    });
  }
  return out;
}

void emit_checks(Context& c, const std::vector<Check>& checks, Json extra = Json::object()) {
  bool pass = !checks.empty();
  for (const auto& k : checks) pass = pass && k.pass;
  if (!pass) c.raise(kFailed);
  if (c.g.out == "csv") {
    CsvTable t({"suite", "name", "value", "threshold", "pass", "error"});
    for (const auto& k : checks) t.row().add(k.suite).add(k.name).add(k.value).add(k.threshold).add(k.pass ? "true" : "false").add(k.error);
    emit(c, t.str());
    return;
  }
  Json arr = Json::array();
  for (const auto& k : checks) arr.push_back(check_json(k));
  extra["checks"] = arr;
  extra["pass"] = pass;
  emit(c, dump_json(extra));
}

int cmd_validate(Context& c, double alpha, int n, const std::string& suite) {
  auto checks = run_suite(c, alpha, n, suite);
  emit_checks(c, checks, {{"alpha", alpha}, {"n", n}, {"suite", suite}});
  return c.code;
}

int cmd_report(Context& c) {
  std::vector<Check> checks;
  const auto k = constants_json();
  auto add = [&](const std::string& s, const std::string& name, double v, const std::string& th, bool pass) {
    checks.push_back({s, name, v, th, pass, ""});
    if (!pass) c.raise(kFailed);
  };
  add("constants", "C_vs_closed_form", k["C_discrepancy"].get<double>(), "<= 1e-12", k["C_discrepancy"].get<double>() <= 1e-12);
  add("constants", "r_vs_closed_form", k["r_discrepancy"].get<double>(), "<= 1e-12", k["r_discrepancy"].get<double>() <= 1e-12);
  add("constants", "sqrt3C_vs_action", k["action_discrepancy"].get<double>(), "<= 1e-9",
      k["action_discrepancy"].get<double>() <= 1e-9);

  std::vector<Outcome> res(9);
  parallel_for(c.g.jobs, 9, [&](std::size_t i) { res[i] = kappa_record(c, 4 + int(i), 0.0, Precision::double_); });
  std::vector<InstabilityRecord> rs;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (res[i].record) rs.push_back(instability_from_json(*res[i].record));
    else checks.push_back({"growth", "kappa_n" + std::to_string(4 + i), NAN, "computed", false, res[i].message});
  }
  try {
    const auto f = growth_fit(rs);
    add("growth", "slope_alpha0_n4_12", f.slope, "in [1.75, 1.88]", f.slope >= 1.75 && f.slope <= 1.88);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i + 1 < rs.size(); ++i)
      if (rs[i].n >= 6 && rs[i].n <= 11) {
        const double d = rs[i + 1].log_kappa - rs[i].log_kappa;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    add("growth", "cauchy_min_n6_11", lo, ">= 1.6", lo >= 1.6);
    add("growth", "cauchy_max_n6_11", hi, "<= 2.0", hi <= 2.0);
  } catch (const std::exception& e) {
    checks.push_back({"growth", "fit", NAN, "computed", false, e.what()});
    c.raise(code_for(e));
  }
  for (auto& ch : run_suite(c, 0.0, 10, "all")) checks.push_back(ch);
  for (auto& ch : run_suite(c, 1.0, 10, "norm")) checks.push_back(ch);
  Json notes = Json::array({"Finite-n thresholds are desk-scale engineering choices; the underlying statements are "
                            "asymptotic in n.",
                            "The constants in front of the growth law and of the norm asymptotic are fitted, not "
                            "given in closed form."});
  emit_checks(c, checks, {{"artifact_version", kVersion}, {"notes", notes}});
  return c.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the complex cubic oscillator -d^2/dx^2 + i x^3 + i alpha x", "cubic-pt"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol-ode", g.tol_ode, "ODE tolerance")->check(CLI::Range(1e-14, 1e-3))->capture_default_str();
  app.add_option("--tol-quad", g.tol_quad, "accepted relative error budget of int psi^2")
      ->check(CLI::Range(1e-14, 0.1))
      ->capture_default_str();
  app.add_option("--cache", g.cache, "cache directory (CUBIC_PT_CACHE overrides)");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  app.add_option("--out", g.out, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--svg", g.svg, "SVG plot path");
  app.add_option("--seed-file", g.seed_file, "JSON file of eigenvalue seeds");
  app.add_option("--output", g.output, "write the table to this file (manifest beside it)");

  auto* constants_cmd = app.add_subcommand("constants", "action constants by quadrature and closed form");

  KappaArgs ka;
  auto* kappa_cmd = app.add_subcommand("kappa", "instability indices kappa_n");
  kappa_cmd->add_option("--alpha", ka.alpha)->capture_default_str();
  kappa_cmd->add_option("--n-min", ka.n_min)->capture_default_str();
  kappa_cmd->add_option("--n-max", ka.n_max)->capture_default_str();
  kappa_cmd->add_option("--precision", ka.precision)->check(CLI::IsMember({"double", "dd"}))->capture_default_str();

  Fig1Args fa;
  auto* fig1_cmd = app.add_subcommand("fig1", "eigenvalue curves and branch events");
  fig1_cmd->add_option("--alpha-min", fa.alpha_min)->capture_default_str();
  fig1_cmd->add_option("--alpha-max", fa.alpha_max)->capture_default_str();
  fig1_cmd->add_option("--steps", fa.steps)->capture_default_str();
  fig1_cmd->add_option("--n-max", fa.n_max)->capture_default_str();

  double s_alpha = 0.0, s_h = 0.0;
  auto* stokes_cmd = app.add_subcommand("stokes", "Stokes diagram");
  stokes_cmd->set_help_flag("--help", "print this help message and exit");
  stokes_cmd->add_option("--alpha", s_alpha)->capture_default_str();
  stokes_cmd->add_option("--h", s_h)->capture_default_str();

  double b_alpha = 0.0;
  int b_min = 1, b_max = 12;
  auto* bs_cmd = app.add_subcommand("bs", "Bohr-Sommerfeld levels");
  bs_cmd->add_option("--alpha", b_alpha)->capture_default_str();
  bs_cmd->add_option("--n-min", b_min)->capture_default_str();
  bs_cmd->add_option("--n-max", b_max)->capture_default_str();

  double e_alpha = 0.0;
  int e_n = 0, e_min = 1, e_max = 6, e_mesh = 2001;
  std::string e_samples;
  auto* eig_cmd = app.add_subcommand("eig", "eigenvalues by shooting");
  eig_cmd->add_option("--alpha", e_alpha)->capture_default_str();
  eig_cmd->add_option("--n", e_n, "single label (overrides the range)");
  eig_cmd->add_option("--n-min", e_min)->capture_default_str();
  eig_cmd->add_option("--n-max", e_max)->capture_default_str();
  eig_cmd->add_option("--samples", e_samples, "binary float64 sextuples of the real-line eigenfunction");
  eig_cmd->add_option("--mesh", e_mesh, "sample count for --samples")->capture_default_str();

  double v_alpha = 0.0;
  int v_n = 10;
  std::string v_suite = "all";
  auto* validate_cmd = app.add_subcommand("validate", "asymptotic validation checks");
  validate_cmd->add_option("--alpha", v_alpha)->capture_default_str();
  validate_cmd->add_option("--n", v_n)->capture_default_str();
  validate_cmd->add_option("--suite", v_suite)
      ->check(CLI::IsMember({"wkb", "airy", "homotopy", "bs", "norm", "all"}))
      ->capture_default_str();

  auto* report_cmd = app.add_subcommand("report", "verification report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kFailed;
  }
  if (const char* env = std::getenv("CUBIC_PT_CACHE"); env && *env) g.cache = env;

  try {
    Context c{g, args, out, err, Cache(g.cache), {}, kOk};
    load_seeds(c);
    if (constants_cmd->parsed()) return cmd_constants(c);
    if (kappa_cmd->parsed()) return cmd_kappa(c, ka);
    if (fig1_cmd->parsed()) return cmd_fig1(c, fa);
    if (stokes_cmd->parsed()) return cmd_stokes(c, s_alpha, s_h);
    if (bs_cmd->parsed()) return cmd_bs(c, b_alpha, b_min, b_max);
    if (eig_cmd->parsed()) {
      if (e_n > 0) e_min = e_max = e_n;
      return cmd_eig(c, e_alpha, e_min, e_max, e_samples, e_mesh);
    }
    if (validate_cmd->parsed()) return cmd_validate(c, v_alpha, v_n, v_suite);
    if (report_cmd->parsed()) return cmd_report(c);
  } catch (const std::exception& e) {
    err << "cubic-pt: " << e.what() << "\n";
    return code_for(e);
  }
  return kFailed;
}

}  // namespace cubicpt::cli
