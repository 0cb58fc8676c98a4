#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "hfp/core.hpp"

using namespace hfp;

namespace {

// Brute-force oracle: nearest pole image over a wide window of k.
double distance_oracle(double x, const PeriodicDomain& dom) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = -3; k <= 3; ++k)
    best = std::min(best, std::abs(x - (dom.t + k * dom.T)));
  return best;
}

}  // namespace

TEST_CASE("domain construction validates its fields") {
  const PeriodicDomain dom(0.0, 1.0, 0.3);
  CHECK(dom.T == 1.0);
  CHECK_THROWS_AS(PeriodicDomain(1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(PeriodicDomain(1.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(PeriodicDomain(0.0, 1.0, 0.0), DomainError);  // t on the edge
  CHECK_THROWS_AS(PeriodicDomain(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PeriodicDomain(0.0, 1.0, -2.0), DomainError);
}

TEST_CASE("reduce_to_period maps by one floor multiple") {
  const PeriodicDomain dom(0.0, 1.0, 0.5);
  CHECK(reduce_to_period(1.25, dom) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(reduce_to_period(-0.25, dom) == doctest::Approx(0.75).epsilon(1e-15));

  // The shift is an exact whole number of periods.
  const double x = -0.25;
  const double r = reduce_to_period(x, dom);
  const double k = (r - x) / dom.T;
  CHECK(k == std::round(k));

  // Points already inside [a, b) come back unchanged.
  CHECK(reduce_to_period(0.0, dom) == 0.0);
  CHECK(reduce_to_period(0.9999999, dom) == 0.9999999);
}

TEST_CASE("reduce_to_period lands in [a, b) and is idempotent") {
  const PeriodicDomain dom(-0.7, 1.8, 0.25);
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 500; ++i) {
    const double x = -50.0 + 100.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const double r = reduce_to_period(x, dom);
    CHECK(r >= dom.a);
    CHECK(r < dom.b);
    CHECK(reduce_to_period(r, dom) == r);  // bitwise fixed point
  }
  CHECK_THROWS_AS(reduce_to_period(std::nan(""), dom), DomainError);
}

TEST_CASE("distance_to_singularity matches a brute-force search") {
  const PeriodicDomain dom(0.0, 1.0, 0.3);
  CHECK(distance_to_singularity(0.9, dom) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(distance_to_singularity(0.3, dom) == 0.0);
  CHECK(distance_to_singularity(0.3 + 2.0, dom) == doctest::Approx(0.0).epsilon(1e-12));

  std::mt19937_64 rng(999);
  for (int i = 0; i < 300; ++i) {
    const double x = -2.5 + 5.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const double d = distance_to_singularity(x, dom);
    CHECK(d >= 0.0);
    CHECK(d <= 0.5 * dom.T);
    CHECK(d == doctest::Approx(distance_oracle(x, dom)).epsilon(1e-12));
  }
}

TEST_CASE("distance_to_singularity is invariant under whole-period shifts") {
  const PeriodicDomain dom(0.0, 2.5, 1.1);
  for (double x : {0.05, 0.7, 1.1, 1.9, 2.49}) {
    const double d = distance_to_singularity(x, dom);
    for (int k : {-2, -1, 1, 2})
      CHECK(std::abs(distance_to_singularity(x + k * dom.T, dom) - d) <= 1e-12);
  }
}

TEST_CASE("check_smooth_factor accepts periodic factors and rejects others") {
  const PeriodicDomain dom(0.0, 1.0, 0.5);

  SmoothFactor periodic;
  periodic.eval_real = [](double x) {
    return Complex(std::cos(2.0 * std::numbers::pi * x), 0.0);
  };
  CHECK_NOTHROW(check_smooth_factor(periodic, dom));

  SmoothFactor drifting;
  drifting.eval_real = [](double x) { return Complex(x, 0.0); };
  CHECK_THROWS_AS(check_smooth_factor(drifting, dom), DomainError);

  SmoothFactor mismatched = periodic;
  mismatched.eval_complex = [](Complex z) { return z; };
  CHECK_THROWS_AS(check_smooth_factor(mismatched, dom), DomainError);

  SmoothFactor empty;
  CHECK_THROWS_AS(check_smooth_factor(empty, dom), DomainError);
}

TEST_CASE("enum labels round-trip to fixed strings") {
  CHECK(std::string(to_string(Rule::S0)) == "S0");
  CHECK(std::string(to_string(Rule::S1)) == "S1");
  CHECK(std::string(to_string(Rule::S2)) == "S2");
  CHECK(std::string(to_string(Rule::Trap)) == "TRAP");
  CHECK(std::string(to_string(DerivSource::Exact)) == "EXACT");
  CHECK(std::string(to_string(DerivSource::Spectral)) == "SPECTRAL");
  CHECK(std::string(to_string(DerivSource::None)) == "NONE");
}
