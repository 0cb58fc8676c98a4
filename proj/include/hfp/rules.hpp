#pragma once

#include <functional>
#include <optional>

#include "hfp/core.hpp"

namespace hfp {

/// First and third derivative of g(x) = ((x - t)/sin(pi (x - t)/T))^3 * u(x)
/// at the singular point, as consumed by the corrected rules. For a smooth
/// factor u they are g1 = (T/pi)^3 u'(t) and g3 = (T/pi)^3 u'''(t).
struct DerivativeBundle {
  Complex g1;
  Complex g3;
  DerivSource source;
};

/// How resolve_derivatives obtains the bundle: Exact reads the stored
/// derivative quadruple, Spectral differentiates an N-point transform of u.
struct DerivativeStrategy {
  DerivSource kind;
  int transform_size;

  static DerivativeStrategy exact() { return {DerivSource::Exact, 0}; }
  static DerivativeStrategy spectral(int N) { return {DerivSource::Spectral, N}; }
};

/// T-periodic integrand with a third-order pole at the domain's singular
/// point: either the built-in kernel times a smooth factor, or a raw map
/// carrying its own derivative data.
class Integrand {
 public:
  enum class Kind { KernelTimesU, RawF };

  static Integrand kernel_times_u(const PeriodicDomain& dom, SmoothFactor u);
  static Integrand raw(const PeriodicDomain& dom, std::function<Complex(double)> f,
                       DerivativeBundle derivatives);

  Complex operator()(double x) const;

  const PeriodicDomain& domain() const { return dom_; }
  Kind kind() const { return kind_; }
  const SmoothFactor& smooth_factor() const;        // KernelTimesU only
  const DerivativeBundle& raw_derivatives() const;  // RawF only

 private:
  Integrand(const PeriodicDomain& dom, Kind kind) : dom_(dom), kind_(kind) {}

  PeriodicDomain dom_;
  Kind kind_;
  SmoothFactor u_;
  std::function<Complex(double)> raw_f_;
  std::optional<DerivativeBundle> raw_d_;
};

/// Punctured trapezoid sum h * sum_{j=1}^{n-1} f(t + j h), h = T/n. The
/// abscissas skip every pole image; each is formed as t + j*h from the
/// integer j and reduced into [a, b) before evaluation.
Complex punctured_trapezoid_sum(const Integrand& f, int n);

/// Grid refinement of the midpoint-offset sum.
enum class MidpointRefine { Full, Half };

/// Midpoint-offset sum on the h grid (Full):     h   * sum_{j=1}^{n}  f(t + j h - h/2)
/// or on the h/2 grid (Half):                    h/2 * sum_{j=1}^{2n} f(t + j h/2 - h/4).
Complex midpoint_offset_sum(const Integrand& f, int n, MidpointRefine refine);

/// Punctured trapezoid rule with both derivative corrections:
///   S0 = ttilde - (pi^2/3) g1 / h + (1/6) g3 h.
QuadratureOutcome rule_s0(const Integrand& f, const DerivativeBundle& d, int n);

/// Midpoint-offset rule with one derivative correction:
///   S1 = midpoint(Full) - pi^2 g1 / h.
QuadratureOutcome rule_s1(const Integrand& f, const DerivativeBundle& d, int n);

/// Derivative-free combination:
///   S2 = 2 midpoint(Full) - midpoint(Half).
QuadratureOutcome rule_s2(const Integrand& f, int n);

/// Dispatches to rule_s0/s1/s2; S0 and S1 throw MissingDerivatives when no
/// bundle is supplied.
QuadratureOutcome apply_rule(Rule s, const Integrand& f,
                             const std::optional<DerivativeBundle>& d, int n);

/// Plain trapezoid rule h [ f(a)/2 + sum_{j=1}^{n-1} f(a + j h) + f(b)/2 ]
/// for regular integrands.
Complex trapezoid(const std::function<Complex(double)>& f,
                  const PeriodicDomain& dom, int n);

/// Builds the derivative bundle for f. Exact requires the smooth factor's
/// derivative quadruple (or a raw integrand's own bundle); Spectral samples u
/// and differentiates the transform, throwing SpectralResolutionTooLow when
/// the transform tail exceeds 1e-8 of the largest coefficient.
DerivativeBundle resolve_derivatives(const Integrand& f, const DerivativeStrategy& strategy);

/// Closed-form value of rule s applied to the integrand K * e_m, from the
/// kernel sine sums on the n, 2n and 4n grids:
///   S0: i (T/n) (B_n(m)          - (2/3) m n^2 - (4/3) m^3) e_m(t)
///   S1: i (T/n) ((B_2n - B_n)(m) -       2 m n^2          ) e_m(t)
///   S2: i (T/n) (2 (B_2n - B_n)(m) - (1/2)(B_4n - B_2n)(m)) e_m(t)
Complex predicted_mode_value(Rule s, long long m, int n, const PeriodicDomain& dom);

}  // namespace hfp
