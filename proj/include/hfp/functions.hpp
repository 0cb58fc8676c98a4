#pragma once

#include "hfp/core.hpp"
#include "hfp/spectral.hpp"

namespace hfp {

// Built-in smooth factors. Each carries eval_real, eval_complex and the exact
// derivative quadruple at the domain's singular point.

/// u(x) = c.
SmoothFactor make_constant_factor(Complex c);

/// u(x) = exp(i 2 pi m x / T).
SmoothFactor make_fourier_mode_factor(long long m, const PeriodicDomain& dom);

/// u(x) = 1 / (rho - cos(2 pi x / T)), rho > 1; analytic in the strip
/// |Im z| < (T / 2 pi) acosh(rho).
SmoothFactor make_runge_factor(double rho, const PeriodicDomain& dom);

/// Wraps a trigonometric polynomial whose period matches the domain.
SmoothFactor make_trig_poly_factor(const TrigPoly& p, const PeriodicDomain& dom);

/// Closed-form finite-part value of K times the factor built by
/// make_runge_factor, evaluated at the domain's singular point. Exact up to
/// one rounding, so convergence and bound studies can measure rule errors
/// far below the accuracy of any sampled reference.
Complex runge_hfp_value(double rho, const PeriodicDomain& dom);

}  // namespace hfp
