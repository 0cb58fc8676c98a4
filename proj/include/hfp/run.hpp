#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hfp/core.hpp"
#include "hfp/spectral.hpp"

namespace hfp {

enum class RunMode { Exactness, Converge, Bounds, Identities };

/// Integrand family selector for a run.
struct FunctionSpec {
  enum class Kind { Eigen, TrigPoly, Runge, Samples };

  Kind kind = Kind::Runge;
  long long m = 1;           // Eigen: mode index
  std::uint64_t seed = 1;    // TrigPoly: generator seed
  int degree = 3;            // TrigPoly: polynomial degree
  bool realify = false;      // TrigPoly: force a real-valued polynomial
  double rho = 1.25;         // Runge: pole parameter, > 1
  std::string samples_path;  // Samples: CSV of grid values
};

/// Full description of one run. Mirrors the flat JSON config; command-line
/// flags override individual fields.
struct RunConfig {
  RunMode mode = RunMode::Exactness;
  double a = 0.0;
  double period = 1.0;
  double t = 0.3;
  std::vector<Rule> rules = {Rule::S0, Rule::S1, Rule::S2};
  std::vector<int> n_list = {2, 4, 8, 16, 32};
  FunctionSpec function;
  std::vector<double> tau_list = {0.05};
  int n_spectral = 256;
  std::string out_path;  // empty writes CSV to stdout

  PeriodicDomain domain() const { return PeriodicDomain(a, a + period, t); }

  /// Throws ConfigError on any malformed field.
  void validate() const;
};

/// Parses a single flat JSON object; unknown keys are rejected.
RunConfig config_from_json_text(const std::string& text);
RunConfig config_from_json_file(const std::string& path);

struct RunResult {
  std::string csv;      // header plus rows in canonical order
  std::string summary;  // extra per-mode lines (converge: fitted decay rates)
  bool all_pass = true;
};

RunResult run_exactness(const RunConfig& cfg);
RunResult run_converge(const RunConfig& cfg);
RunResult run_bounds(const RunConfig& cfg);
RunResult run_identities(const RunConfig& cfg);
RunResult run(const RunConfig& cfg);

const char* to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);
Rule rule_from_string(const std::string& s);
FunctionSpec::Kind function_kind_from_string(const std::string& s);

/// Serialization used for every numeric CSV cell: 17 significant digits,
/// enough to round-trip any double.
std::string format_numeric(double v);

/// Least-squares slope of ln|err| against n over the rows with
/// 1e-13 < |err| < 1e-2. Not applicable when every error is at the exactness
/// floor (<= 1e-9); throws InsufficientPoints when fewer than 3 rows qualify.
struct SlopeFit {
  bool applicable = false;
  double slope = 0.0;
};
SlopeFit fit_decay_rate(const std::vector<std::pair<int, double>>& errors);

/// Reads sample rows "x,re[,im]" on the uniform grid over [a, b) and returns
/// the interpolating trigonometric polynomial.
TrigPoly trig_poly_from_samples_csv(const std::string& path, const PeriodicDomain& dom);

}  // namespace hfp
