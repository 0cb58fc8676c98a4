#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>

#include "hfp/errors.hpp"

namespace hfp {

using Complex = std::complex<double>;

/// One period [a, b) of the real line with a marked interior singular point t.
/// The period T is fixed to b - a at construction; all pole images lie at
/// t + k*T for integer k.
struct PeriodicDomain {
  double a;
  double b;
  double t;
  double T;

  PeriodicDomain(double a_, double b_, double t_);
};

/// Smooth T-periodic factor u multiplying the singular kernel.
///
/// eval_real is required. eval_complex (analytic continuation off the real
/// axis) and derivs_at_t (u, u', u'', u''' at the singular point) are optional
/// and unlock strip bounds and exact derivative corrections respectively.
///
/// eval_real_ext is an optional extended-precision twin of eval_real. The
/// quadrature sums evaluate u at abscissas t + offset whose double rounding
/// the third-order pole magnifies by O(1/offset^3); when this member is set
/// they call it with the unrounded extended abscissa instead, which keeps
/// measured rule errors near the theoretical bound deep into the exponential
/// tail. Factors without it lose nothing but that last stretch of accuracy.
struct SmoothFactor {
  std::function<Complex(double)> eval_real;
  std::function<Complex(Complex)> eval_complex;  // empty when unavailable
  std::function<std::complex<long double>(long double)> eval_real_ext;
  std::optional<std::array<Complex, 4>> derivs_at_t;

  bool has_complex_eval() const { return static_cast<bool>(eval_complex); }
  bool has_extended_eval() const { return static_cast<bool>(eval_real_ext); }
  bool has_derivatives() const { return derivs_at_t.has_value(); }
};

/// Quadrature rule identifiers. S0 is the punctured trapezoid rule with two
/// derivative corrections, S1 the midpoint-offset rule with one, S2 the
/// derivative-free combination, Trap the plain trapezoid rule for regular
/// integrands.
enum class Rule { S0, S1, S2, Trap };

/// Where the derivative corrections of a rule application came from.
enum class DerivSource { Exact, Spectral, None };

const char* to_string(Rule s);
const char* to_string(DerivSource d);

/// Result of one rule application.
struct QuadratureOutcome {
  Rule rule;
  int n;
  Complex value;
  DerivSource deriv_source;
};

/// Maps x into [a, b) by subtracting one floor multiple of the period.
/// Points already inside [a, b) are returned unchanged, so the map is
/// idempotent bit for bit.
double reduce_to_period(double x, const PeriodicDomain& dom);

/// Distance from x to the nearest pole image t + k*T; always in [0, T/2].
double distance_to_singularity(double x, const PeriodicDomain& dom);

/// Spot-checks that u is T-periodic and that eval_complex (when present)
/// agrees with eval_real on the real axis. Throws DomainError on violation.
void check_smooth_factor(const SmoothFactor& u, const PeriodicDomain& dom,
                         int samples = 16);

}  // namespace hfp
