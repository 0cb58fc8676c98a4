#pragma once

#include <functional>

#include "hfp/core.hpp"

namespace hfp {

// Error bounds for analytic integrands. When the smooth factor u extends
// analytically to the strip |Im z| < sigma, each rule's error decays like
// exp(-2 n pi tau / T) for every tau < sigma, with a constant proportional to
// the size of the pole-free part of the integrand on the lines Im z = +-tau.

/// Analyticity strip of half-width sigma probed at offset tau, 0 < tau < sigma.
struct StripSpec {
  double sigma;
  double tau;

  StripSpec(double sigma_, double tau_);
};

/// One bound evaluation.
struct BoundReport {
  Rule rule;
  int n;
  double tau;
  double m_hat;
  double phi_n;
  double phi_2n;
  double phi_4n;
  double bound;
};

/// Geometric tail factor phi_n(tau) = q / (1 - q), q = exp(-2 n pi tau / T),
/// computed to full relative accuracy at both ends of the range.
double geometric_decay_factor(long long n, double tau, double T);

/// Pole-free part of the integrand K * u: the kernel times u minus the three
/// correction terms that absorb the pole,
///   K(z) (u(z) - u(t)) - (T/pi) u'(t) / sin^2(w) - (T^2/(2 pi^2)) u''(t) cot(w)
/// with w = pi (z - t)/T. Within 1e-3*T of a pole image the removable limit
///   (T^3/(6 pi^3)) (u'''(t) - (2 pi^2/T^2) u'(t))
/// is returned instead. Requires eval_complex and derivs_at_t.
Complex pole_free_part(Complex z, const SmoothFactor& u, const PeriodicDomain& dom);

/// Largest |f| over uniform samples of the two lines Im z = +tau and
/// Im z = -tau, summed. Nested sample counts (s, 2s, 4s, ...) reuse abscissas,
/// so the estimate is nondecreasing under refinement.
double two_line_maximum(const std::function<Complex(Complex)>& f,
                        const PeriodicDomain& dom, double tau, int samples);

/// Sampled strip size M(tau) of the pole-free part of K * u.
double sample_strip_maximum(const SmoothFactor& u, const PeriodicDomain& dom,
                            double tau, int samples = 1024);

/// Error bound of rule s at grid size n:
///   S0: T M phi_n      S1: T M (phi_n + 2 phi_2n)      S2: T M (2 phi_n + 5 phi_2n + 2 phi_4n).
double rule_error_bound(Rule s, int n, double tau, double m_hat, double T);

/// Trapezoid-rule bound T M phi_n(tau) for a regular periodic integrand that
/// is analytic in the strip.
double davis_bound(int n, double tau, double m_regular, double T);

/// Populates every field of a BoundReport for rule s.
BoundReport make_bound_report(Rule s, int n, double tau, double m_hat, double T);

/// Strip half-width of the factor 1/(rho - cos(2 pi x / T)):
/// sigma = (T / 2 pi) * acosh(rho). Throws DomainError for rho <= 1.
double runge_strip_halfwidth(double rho, double T);

}  // namespace hfp
