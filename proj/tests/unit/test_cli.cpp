// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli/app.hpp"
#include "cli/cache.hpp"
#include "cli/output.hpp"
#include "cli/svg.hpp"

using namespace cubicpt::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  ::unsetenv("CUBIC_PT_CACHE");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("cubicpt-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Well-formedness of the emitted subset of XML: balanced tags, quoted attributes, known entities.
bool well_formed(const std::string& x) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (x.rfind("<?xml", 0) == 0) i = x.find("?>") + 2;
  while ((i = x.find('<', i)) != std::string::npos) {
    const std::size_t j = x.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = x.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    std::size_t quotes = 0;
    for (char c : tag) quotes += c == '"';
    if (quotes % 2) return false;
    if (!self_closing) stack.push_back(name);
  }
  const std::regex bad_amp("&(?!(amp|lt|gt|quot|apos);)");
  return stack.empty() && !std::regex_search(x, bad_amp);
}

bool no_external_resources(const std::string& x) {
  if (x.find("href") != std::string::npos || x.find("<image") != std::string::npos) return false;
  for (std::size_t i = 0; (i = x.find("url(", i)) != std::string::npos; i += 4)
    if (x[i + 4] != '#') return false;
  return true;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("constants as JSON and CSV") {
    const auto j = cli({"constants"});
    CHECK(j.code == kOk);
    const auto v = Json::parse(j.out);
    CHECK(v["C"].get<double>() == doctest::Approx(0.841309263195).epsilon(1e-11));
    CHECK(v["growth_rate"].get<double>() == doctest::Approx(1.813799364234).epsilon(1e-11));
    CHECK(v["C_discrepancy"].get<double>() <= 1e-12);
    const auto c = cli({"--out", "csv", "constants"});
    CHECK(c.code == kOk);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 2);
    CHECK(c.out.find('\r') == std::string::npos);
    CHECK(c.out.rfind("C,C_closed,", 0) == 0);
  }

  TEST_CASE("JSON and CSV number formatting") {
    CHECK(dump_json(Json{{"x", 0.1}}, 0) == "{\"x\":0.10000000000000001}\n");
    CHECK(dump_json(Json{{"x", std::nan("")}}, 0) == "{\"x\":null}\n");
    CsvTable t({"a", "b"});
    t.row().add(1.0 / 3.0).add(std::string("x,y"));
    CHECK(t.str() == "a,b\n0.333333333333,\"x,y\"\n");
    CHECK(content_hash("") == "cbf29ce484222325");
  }

  TEST_CASE("kappa output is deterministic") {
    const auto a = cli({"--out", "csv", "kappa", "--alpha", "0", "--n-min", "4", "--n-max", "4"});
    const auto b = cli({"--out", "csv", "kappa", "--alpha", "0", "--n-min", "4", "--n-max", "4"});
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 2);
    const auto j = Json::parse(cli({"kappa", "--n-min", "4", "--n-max", "4"}).out);
    CHECK(j["records"].size() == 1);
    CHECK(j["fit"].is_null());
    CHECK(j["records"][0]["budget_ok"].get<bool>());
  }

  TEST_CASE("cache: cached and fresh payloads are bit-identical") {
    const auto dir = scratch_dir("cache");
    const std::vector<std::string> args = {"--cache", dir.string(), "eig", "--n-min", "3", "--n-max", "4"};
    const auto fresh = cli(args);
    CHECK(fresh.code == kOk);
    std::size_t entries = 0;
    for (const auto& e : fs::directory_iterator(dir)) entries += e.path().extension() == ".json";
    CHECK(entries == 2);
    const auto cached = cli(args);
    CHECK(cached.out == fresh.out);
    const auto uncached = cli({"eig", "--n-min", "3", "--n-max", "4"});
    CHECK(uncached.out == fresh.out);
    // entries carry key, operation and version
    for (const auto& e : fs::directory_iterator(dir)) {
      const auto j = Json::parse(slurp(e.path()));
      CHECK(j["version"] == kVersion);
      CHECK(j["operation"] == "eig");
      CHECK(e.path().stem().string() == j["key"].get<std::string>());
    }
    // the environment overrides --cache
    const auto other = scratch_dir("cache-env");
    ::setenv("CUBIC_PT_CACHE", other.string().c_str(), 1);
    std::ostringstream out, err;
    CHECK(run({"--cache", dir.string(), "eig", "--n", "3"}, out, err) == kOk);
    ::unsetenv("CUBIC_PT_CACHE");
    CHECK(!fs::is_empty(other));
    fs::remove_all(dir);
    fs::remove_all(other);
  }

  TEST_CASE("cache keys depend on tolerances and version-tagged content") {
    const Json p1 = {{"n", 3}, {"tol", 1e-12}}, p2 = {{"n", 3}, {"tol", 1e-11}};
    CHECK(Cache::key("eig", p1) != Cache::key("eig", p2));
    CHECK(Cache::key("eig", p1) != Cache::key("kappa", p1));
    CHECK(Cache::key("eig", p1) == Cache::key("eig", p1));
    const auto dir = scratch_dir("cache-corrupt");
    Cache c(dir);
    const auto k = Cache::key("eig", p1);
    c.put(k, "eig", "{\"x\":1}");
    CHECK(c.get(k).value() == "{\"x\":1}");
    std::ofstream(c.entry_path(k)) << "{\"key\":\"other\",\"version\":\"0.0.0\",\"payload\":\"{}\"}";
    CHECK(!c.get(k).has_value());
    CHECK(!Cache().enabled());
    fs::remove_all(dir);
  }

  TEST_CASE("SVG outputs are well-formed and self-contained") {
    const auto dir = scratch_dir("svg");
    const auto stokes = (dir / "stokes.svg").string();
    CHECK(cli({"--svg", stokes, "stokes", "--alpha", "0", "--h", "0"}).code == kOk);
    const auto kap = (dir / "kappa.svg").string();
    CHECK(cli({"--svg", kap, "kappa", "--n-min", "3", "--n-max", "7"}).code == kOk);
    for (const auto& p : {stokes, kap}) {
      const auto s = slurp(p);
      CHECK(s.find("<svg") != std::string::npos);
      CHECK(well_formed(s));
      CHECK(no_external_resources(s));
      CHECK(fs::exists(p + ".manifest.json"));
    }
    SvgPlot plot("a < b & c", "x", "y");
    plot.polyline({{0, 0}, {1, std::nan("")}, {2, 1}, {3, 2}}, "#000");
    CHECK(well_formed(plot.str()));
    CHECK(xml_escape("<&\">") == "&lt;&amp;&quot;&gt;");
    fs::remove_all(dir);
  }

  TEST_CASE("stokes JSON census") {
    const auto r = cli({"stokes", "--alpha", "0", "--h", "0"});
    CHECK(r.code == kOk);
    const auto j = Json::parse(r.out);
    CHECK(j["unbounded_lines"].get<int>() == 7);
  }

  TEST_CASE("output file and manifest") {
    const auto dir = scratch_dir("manifest");
    const auto path = (dir / "bs.json").string();
    CHECK(cli({"--output", path, "--jobs", "2", "bs", "--n-min", "1", "--n-max", "3"}).code == kOk);
    const auto m1 = Json::parse(slurp(path + ".manifest.json"));
    CHECK(Json::parse(slurp(path))["levels"].size() == 3);
    CHECK(cli({"--output", path, "--jobs", "1", "bs", "--n-min", "1", "--n-max", "3"}).code == kOk);
    const auto m2 = Json::parse(slurp(path + ".manifest.json"));
    CHECK(m1["config_hash"] == m2["config_hash"]);
    CHECK(m1["artifact_version"] == kVersion);
    CHECK(m1["tolerances"]["tol_ode"].get<double>() == 1e-12);
    CHECK(cli({"--output", path, "bs", "--n-min", "1", "--n-max", "4"}).code == kOk);
    CHECK(Json::parse(slurp(path + ".manifest.json"))["config_hash"] != m1["config_hash"]);
    fs::remove_all(dir);
  }

  TEST_CASE("eigenfunction samples") {
    const auto dir = scratch_dir("samples");
    const auto path = (dir / "psi.bin").string();
    CHECK(cli({"eig", "--n", "2", "--samples", path, "--mesh", "101"}).code == kOk);
    CHECK(fs::file_size(path) == 101 * 6 * sizeof(double));
    CHECK(cli({"eig", "--n-min", "1", "--n-max", "2", "--samples", path}).code == kFailed);
    fs::remove_all(dir);
  }

  TEST_CASE("exit codes") {
    CHECK(cli({"kappa", "--n-min", "4", "--n-max", "13"}).code == kPrecision);
    CHECK(cli({"kappa", "--precision", "dd", "--n-min", "4", "--n-max", "21"}).code == kPrecision);
    CHECK(cli({"stokes", "--alpha", "5.0", "--h", "0.5"}).code == kGeometry);
    CHECK(cli({"kappa", "--bogus"}).code == kFailed);
    CHECK(cli({}).code == kFailed);
    CHECK(cli({"fig1", "--steps", "8"}).code == kFailed);
    CHECK(cli({"validate", "--suite", "bs", "--n", "1"}).code == kFailed);
    CHECK(cli({"--help"}).code == kOk);
    const auto dir = scratch_dir("seeds");
    const auto seeds = (dir / "seeds.json").string();
    std::ofstream(seeds) << R"({"seeds":[{"n":3,"alpha":0,"lambda":[3,40]}]})";
    const auto r = cli({"--seed-file", seeds, "eig", "--n", "3"});
    CHECK(r.code == kSolver);
    CHECK(Json::parse(r.out)["failures"].size() == 1);
    fs::remove_all(dir);
  }

  TEST_CASE("validate reports every check") {
    const auto r = cli({"validate", "--alpha", "0", "--n", "6", "--suite", "all"});
    CHECK(r.code == kOk);
    const auto j = Json::parse(r.out);
    CHECK(j["pass"].get<bool>());
    CHECK(j["checks"].size() == 8);
    for (const auto& c : j["checks"]) CHECK(c["pass"].get<bool>());
  }
}
