#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hfp/run.hpp"

using namespace hfp;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

// Writes a text file and returns its path; files land in the test's cwd.
std::string write_file(const std::string& name, const std::string& body) {
  std::ofstream out(name, std::ios::binary);
  out << body;
  return name;
}

}  // namespace

TEST_CASE("format_numeric round-trips doubles and prints integers clean") {
  CHECK(format_numeric(4.0) == "4");
  CHECK(format_numeric(-2.0) == "-2");
  CHECK(format_numeric(0.0) == "0");
  CHECK(format_numeric(0.1) == "0.10000000000000001");
  const double v = 0.12345678901234567;
  CHECK(std::stod(format_numeric(v)) == v);
}

TEST_CASE("config JSON parsing covers every key and rejects unknown ones") {
  const std::string text = R"({
    "mode": "bounds", "a": -0.5, "period": 2.0, "t": 0.25,
    "rules": ["S2", "S0"], "n_list": [4, 8, 16],
    "function": "runge", "rho": 1.5,
    "tau_list": [0.02, 0.04], "n_spectral": 64, "out": "x.csv"
  })";
  const RunConfig cfg = config_from_json_text(text);
  CHECK(cfg.mode == RunMode::Bounds);
  CHECK(cfg.a == -0.5);
  CHECK(cfg.period == 2.0);
  CHECK(cfg.t == 0.25);
  CHECK(cfg.rules == std::vector<Rule>{Rule::S2, Rule::S0});
  CHECK(cfg.n_list == std::vector<int>{4, 8, 16});
  CHECK(cfg.function.kind == FunctionSpec::Kind::Runge);
  CHECK(cfg.function.rho == 1.5);
  CHECK(cfg.tau_list == std::vector<double>{0.02, 0.04});
  CHECK(cfg.n_spectral == 64);
  CHECK(cfg.out_path == "x.csv");
  CHECK_NOTHROW(cfg.validate());

  const RunConfig trig = config_from_json_text(
      R"({"function": "trigpoly", "m": -3, "seed": 99, "degree": 5, "realify": true})");
  CHECK(trig.function.kind == FunctionSpec::Kind::TrigPoly);
  CHECK(trig.function.m == -3);
  CHECK(trig.function.seed == 99);
  CHECK(trig.function.degree == 5);
  CHECK(trig.function.realify);
  CHECK(trig.mode == RunMode::Exactness);  // defaults survive partial configs

  CHECK_THROWS_AS(config_from_json_text(R"({"nlist": [2]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"mode": "magic"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"rules": ["TRAP"]})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text(R"({"n_list": "four"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{ not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json_file("no/such/file.json"), ConfigError);
}

TEST_CASE("validate rejects malformed run configurations") {
  RunConfig good;
  CHECK_NOTHROW(good.validate());

  RunConfig c = good;
  c.period = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.t = 5.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.rules = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.rules = {Rule::S0, Rule::S0};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.rules = {Rule::Trap};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.n_list = {4, 4};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.n_list = {8, 4};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.n_list = {1, 4};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.n_spectral = 15;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.n_spectral = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.tau_list = {0.05, 0.05};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.tau_list = {-0.1};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.function.kind = FunctionSpec::Kind::Runge;
  c.function.rho = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = good;
  c.function.kind = FunctionSpec::Kind::Samples;
  c.function.samples_path = "";
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("exactness mode emits one row per rule, grid and mode") {
  RunConfig cfg;
  cfg.mode = RunMode::Exactness;
  cfg.function.kind = FunctionSpec::Kind::Eigen;
  cfg.rules = {Rule::S2};
  cfg.n_list = {4};
  const RunResult res = run(cfg);
  CHECK(first_line(res.csv) ==
        "rule,n,m,approx_re,approx_im,exact_re,exact_im,abs_err,rel_err");
  CHECK(count_lines(res.csv) == 1 + 7);  // header + m in -3..3
  CHECK(res.all_pass);
  CHECK(res.summary.empty());

  // Rules are emitted in canonical order regardless of config order.
  RunConfig both = cfg;
  both.rules = {Rule::S2, Rule::S0};
  const RunResult rboth = run(both);
  CHECK(count_lines(rboth.csv) == 1 + 14);
  CHECK(rboth.csv.find("\nS0,") != std::string::npos);
  const auto s0_pos = rboth.csv.find("\nS0,");
  const auto s2_pos = rboth.csv.find("\nS2,");
  CHECK(s0_pos < s2_pos);
}

TEST_CASE("exactness mode covers random polynomials and enforces the degree cap") {
  RunConfig cfg;
  cfg.function.kind = FunctionSpec::Kind::TrigPoly;
  cfg.function.degree = 5;
  cfg.function.seed = 31;
  cfg.n_list = {8, 16};
  const RunResult res = run_exactness(cfg);
  CHECK(res.all_pass);
  CHECK(count_lines(res.csv) == 1 + 3 * 2);  // 3 rules x 2 grids
  // The mode column carries the polynomial degree.
  CHECK(res.csv.find("S0,8,5,") != std::string::npos);

  RunConfig too_rich = cfg;
  too_rich.function.degree = 9;  // exceeds min(n) - 1 = 7
  CHECK_THROWS_AS(run_exactness(too_rich), ConfigError);

  RunConfig runge = cfg;
  runge.function.kind = FunctionSpec::Kind::Runge;
  CHECK_THROWS_AS(run_exactness(runge), ConfigError);
}

TEST_CASE("converge mode fits the decay rate of an analytic factor") {
  RunConfig cfg;
  cfg.mode = RunMode::Converge;
  cfg.function.kind = FunctionSpec::Kind::Runge;
  cfg.function.rho = 1.25;
  cfg.rules = {Rule::S2};
  cfg.n_list = {16, 20, 24, 28, 32, 36, 40};
  cfg.n_spectral = 256;
  const RunResult res = run(cfg);
  CHECK(first_line(res.csv) == "rule,n,abs_err");
  CHECK(count_lines(res.csv) == 1 + 7);
  CHECK(res.all_pass);
  CHECK(res.summary.find("rate,S2,") == 0);
  CHECK(res.summary.find(",OK") != std::string::npos);

  // The fitted slope lands near -ln 2 (strip half-width ln2 / 2 pi, T = 1).
  std::istringstream ss(res.summary);
  std::string cell;
  std::getline(ss, cell, ',');  // "rate"
  std::getline(ss, cell, ',');  // rule
  std::getline(ss, cell, ',');  // fitted
  const double fitted = std::stod(cell);
  std::getline(ss, cell, ',');  // predicted
  const double predicted = std::stod(cell);
  CHECK(predicted == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(fitted - predicted) <= 0.1 * std::abs(predicted));
}

TEST_CASE("converge mode reports NOT_APPLICABLE at the exactness floor") {
  RunConfig cfg;
  cfg.mode = RunMode::Converge;
  cfg.function.kind = FunctionSpec::Kind::Eigen;
  cfg.function.m = 1;
  cfg.rules = {Rule::S0, Rule::S1, Rule::S2};
  cfg.n_list = {2, 4, 8};
  const RunResult res = run(cfg);
  CHECK(res.all_pass);
  for (const char* rule : {"rate,S0,NA,NA,NOT_APPLICABLE",
                           "rate,S1,NA,NA,NOT_APPLICABLE",
                           "rate,S2,NA,NA,NOT_APPLICABLE"})
    CHECK(res.summary.find(rule) != std::string::npos);
}

TEST_CASE("bounds mode validates tau against the strip and passes inside it") {
  RunConfig cfg;
  cfg.mode = RunMode::Bounds;
  cfg.function.kind = FunctionSpec::Kind::Runge;
  cfg.function.rho = 1.25;
  cfg.rules = {Rule::S0, Rule::S2};
  cfg.n_list = {4, 8, 16};
  const double sigma = std::log(2.0) / (2.0 * std::numbers::pi);
  cfg.tau_list = {0.3 * sigma, 0.6 * sigma};
  const RunResult res = run(cfg);
  CHECK(first_line(res.csv) == "rule,n,tau,m_hat,bound,abs_err,ratio,pass");
  CHECK(count_lines(res.csv) == 1 + 2 * 3 * 2);  // rules x grids x taus
  CHECK(res.all_pass);
  CHECK(res.csv.find("FAIL") == std::string::npos);

  RunConfig wide = cfg;
  wide.tau_list = {2.0 * sigma};
  CHECK_THROWS_AS(run(wide), TauOutOfRange);

  RunConfig tiny = cfg;
  tiny.tau_list = {1e-4};
  CHECK_THROWS_AS(run(tiny), TauOutOfRange);
}

TEST_CASE("identities mode checks every identity family over the grid list") {
  RunConfig cfg;
  cfg.mode = RunMode::Identities;
  cfg.function.kind = FunctionSpec::Kind::Runge;
  cfg.n_list = {2, 4, 8};
  const RunResult res = run(cfg);
  CHECK(first_line(res.csv) == "identity,param1,param2,deviation,pass");
  CHECK(count_lines(res.csv) == 1 + 8 * 3);  // 8 identity families x 3 grids
  CHECK(res.all_pass);
  CHECK(res.csv.find("FAIL") == std::string::npos);
  for (const char* name :
       {"kernel_sine_sum", "kernel_sine_sum_recursion", "cot_sine_sum",
        "offset_sine_ratio_sum", "inv_sin2_sum", "midpoint_decomposition",
        "compose_s1", "compose_s2"})
    CHECK(res.csv.find(name) != std::string::npos);
}

TEST_CASE("run output is byte-identical across repeated invocations") {
  for (RunMode mode : {RunMode::Exactness, RunMode::Converge, RunMode::Bounds,
                       RunMode::Identities}) {
    RunConfig cfg;
    cfg.mode = mode;
    // Eigen factors keep exactness/converge at the floor; the analytic factor
    // exercises the strip machinery in bounds/identities.
    cfg.function.kind =
        (mode == RunMode::Exactness || mode == RunMode::Converge)
            ? FunctionSpec::Kind::Eigen
            : FunctionSpec::Kind::Runge;
    cfg.n_list = {4, 8};
    cfg.tau_list = {0.05};
    const RunResult a = run(cfg);
    const RunResult b = run(cfg);
    CHECK(a.csv == b.csv);
    CHECK(a.summary == b.summary);
    CHECK(a.all_pass == b.all_pass);
  }
}

TEST_CASE("fit_decay_rate recovers synthetic slopes and flags bad inputs") {
  std::vector<std::pair<int, double>> clean;
  for (int n = 4; n <= 20; n += 4)
    clean.emplace_back(n, 1e-3 * std::exp(-0.7 * (n - 4)));
  const SlopeFit fit = fit_decay_rate(clean);
  CHECK(fit.applicable);
  CHECK(fit.slope == doctest::Approx(-0.7).epsilon(1e-10));

  // Errors at the exactness floor: rate fitting does not apply.
  const SlopeFit flat = fit_decay_rate({{4, 1e-12}, {8, 1e-11}, {16, 3e-12}});
  CHECK_FALSE(flat.applicable);

  // Too few usable points inside the window.
  CHECK_THROWS_AS(fit_decay_rate({{4, 1e-5}, {8, 1e-6}}), InsufficientPoints);
  CHECK_THROWS_AS(fit_decay_rate({{4, 0.5}, {8, 1e-4}, {16, 1e-16}}),
                  InsufficientPoints);
}

TEST_CASE("sample CSV files round-trip through the transform") {
  const PeriodicDomain dom(0.0, 1.0, 0.3);
  const int N = 16;
  std::ostringstream body;
  body << "x,re\n";
  for (int k = 0; k < N; ++k) {
    const double x = 0.0 + k * (1.0 / N);
    body << format_numeric(x) << ","
         << format_numeric(std::cos(2.0 * std::numbers::pi * x)) << "\n";
  }
  const std::string path = write_file("samples_cos.csv", body.str());

  const TrigPoly p = trig_poly_from_samples_csv(path, dom);
  CHECK(std::abs(p.coeff(1) - Complex(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(p.coeff(-1) - Complex(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(p.coeff(3)) <= 1e-14);

  // The samples function feeds exactness mode end to end.
  RunConfig cfg;
  cfg.function.kind = FunctionSpec::Kind::Samples;
  cfg.function.samples_path = path;
  cfg.n_list = {8, 16};
  const RunResult res = run_exactness(cfg);
  CHECK(res.all_pass);

  // Complex-valued samples pass through the third column.
  std::ostringstream cbody;
  for (int k = 0; k < N; ++k) {
    const double x = k * (1.0 / N);
    const double ph = 2.0 * std::numbers::pi * x;
    cbody << format_numeric(x) << "," << format_numeric(std::cos(ph)) << ","
          << format_numeric(std::sin(ph)) << "\n";
  }
  const TrigPoly pc = trig_poly_from_samples_csv(
      write_file("samples_e1.csv", cbody.str()), dom);
  CHECK(std::abs(pc.coeff(1) - Complex(1.0, 0.0)) <= 1e-13);
  CHECK(std::abs(pc.coeff(-1)) <= 1e-13);

  // A grid anchored away from zero still yields absolute-frame coefficients.
  const PeriodicDomain shifted(-0.5, 0.5, 0.25);
  std::ostringstream sbody;
  for (int k = 0; k < N; ++k) {
    const double x = -0.5 + k * (1.0 / N);
    sbody << format_numeric(x) << ","
          << format_numeric(std::cos(2.0 * std::numbers::pi * x)) << "\n";
  }
  const TrigPoly ps = trig_poly_from_samples_csv(
      write_file("samples_cos_shifted.csv", sbody.str()), shifted);
  CHECK(std::abs(ps.coeff(1) - Complex(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(ps.coeff(-1) - Complex(0.5, 0.0)) <= 1e-14);

  // Off-grid abscissas and odd row counts are rejected.
  CHECK_THROWS_AS(
      trig_poly_from_samples_csv(
          write_file("samples_bad_grid.csv",
                     "0,1\n0.07,1\n0.125,1\n0.1875,1\n0.25,1\n0.3125,1\n"
                     "0.375,1\n0.4375,1\n0.5,1\n0.5625,1\n0.625,1\n0.6875,1\n"
                     "0.75,1\n0.8125,1\n0.875,1\n0.9375,1\n"),
          dom),
      ConfigError);
  CHECK_THROWS_AS(
      trig_poly_from_samples_csv(
          write_file("samples_short.csv", "0,1\n0.25,1\n0.5,1\n0.75,1\n"), dom),
      ConfigError);
  CHECK_THROWS_AS(
      trig_poly_from_samples_csv(write_file("samples_junk.csv",
                                            "x,re\n0,one\n"),
                                 dom),
      ConfigError);
  CHECK_THROWS_AS(trig_poly_from_samples_csv("missing_file.csv", dom), ConfigError);
}
