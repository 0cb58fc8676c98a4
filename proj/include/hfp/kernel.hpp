#pragma once

#include "hfp/core.hpp"

namespace hfp {

// Singular kernel and its discrete trigonometric sums.
//
//   K(x) = cos(pi (x - t)/T) / sin^3(pi (x - t)/T)
//
// K has a third-order pole at every t + k*T. Applied to the Fourier modes
// e_m(x) = exp(i 2 pi m x / T) it acts as a multiplication operator, and the
// grid sums below have integer-coefficient closed forms that the quadrature
// rules inherit. The closed forms are the production path; the direct sums
// exist as independent oracles.

/// K(x). Throws SingularityTooClose when x is within delta_min = 1e-13*T of a
/// pole image.
double kernel_value(double x, const PeriodicDomain& dom);

/// Fourier mode e_m(x) = exp(i 2 pi m x / T).
Complex fourier_mode(long long m, double x, const PeriodicDomain& dom);

/// Eigenvalue of the finite-part integral on e_m: lambda_m = -i sgn(m) 2 T m^2.
Complex kernel_eigenvalue(long long m, double T);

/// Exact finite-part value for the integrand K * e_m: lambda_m * e_m(t).
Complex mode_hfp_value(long long m, const PeriodicDomain& dom);

/// Period-normalized mode coefficient -i sgn(m) 4 pi m^2; satisfies the
/// second-difference recursion A_{m+1} - 2 A_m + A_{m-1} = -8 pi i for m >= 1.
Complex mode_hfp_coefficient(long long m);

/// Closed form of the kernel-weighted sine sum
///   sum_{j=1}^{n-1} [cos(y_j/2)/sin^3(y_j/2)] sin(m y_j),  y_j = 2 j pi / n:
/// with r = |m| mod n it equals sgn(m) * (2/3) r (n - r)(n - 2r).
double kernel_sine_sum_closed(long long m, long long n);

/// Same sum evaluated term by term (oracle). Arguments of sin/cos are formed
/// from the integers j, m, n directly, never by accumulating increments.
double kernel_sine_sum_direct(long long m, long long n);

/// Direct cotangent sum sum_{j=1}^{n-1} cot(y_j/2) sin(m y_j) for m >= 1.
double cot_sine_sum(long long m, long long n);

/// Its closed form n - 2m, valid only for 1 <= m <= n-1 (DomainError outside).
double cot_sine_sum_closed(long long m, long long n);

/// Direct shifted-ratio sum sum_{j=1}^{n-1} sin(k y_j - y_j/2) / sin(y_j/2)
/// for k >= 1.
double offset_sine_ratio_sum(long long k, long long n);

/// Its closed form n - 2k + 1, valid only for 1 <= k <= n-1.
double offset_sine_ratio_sum_closed(long long k, long long n);

/// Direct inverse-square sum sum_{j=1}^{n-1} 1 / sin^2(y_j/2).
double inv_sin2_sum(long long n);

/// Its closed form (n^2 - 1)/3.
double inv_sin2_sum_closed(long long n);

}  // namespace hfp
