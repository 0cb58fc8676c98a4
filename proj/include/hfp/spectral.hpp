#pragma once

#include <cstdint>
#include <vector>

#include "hfp/core.hpp"

namespace hfp {

/// Trigonometric polynomial sum_{|m| <= M} c_m exp(i 2 pi m x / T).
class TrigPoly {
 public:
  /// coeffs holds c_{-M}..c_{M} in ascending m order (size 2M+1, odd).
  TrigPoly(double period, std::vector<Complex> coeffs);

  double period() const { return period_; }
  int degree() const { return degree_; }

  /// c_m; zero outside [-M, M].
  Complex coeff(long long m) const;

  Complex operator()(double x) const;
  Complex operator()(Complex z) const;

 private:
  double period_;
  int degree_;
  std::vector<Complex> c_;  // index m + degree_
};

/// Discrete Fourier coefficients of u from N uniform samples on [a, b):
/// c_m = (1/N) sum_k u(a + k T/N) exp(-i 2 pi m (a + k T/N) / T) for
/// |m| <= N/2 - 1 (the Nyquist coefficient is discarded), so the result
/// multiplies e^{i 2 pi m x / T} in absolute coordinates whatever the left
/// endpoint. N must be even and >= 8.
TrigPoly fourier_coefficients(const SmoothFactor& u, const PeriodicDomain& dom, int N);

/// Same transform applied to already-sampled grid values u(anchor + k T/N),
/// k = 0..N-1; anchor is the x of the first sample.
TrigPoly dft_of_samples(const std::vector<Complex>& samples, double period,
                        double anchor = 0.0);

/// Derivative of order 1..3 of p at t: sum_m c_m (i 2 pi m / T)^order e_m(t).
Complex differentiate_at(const TrigPoly& p, double t, int order);

/// Exact finite-part value of K * p via the eigenvalue relation:
/// sum_m c_m lambda_m e_m(t).
Complex hfp_reference(const TrigPoly& p, const PeriodicDomain& dom);

struct SpectralReference {
  Complex value;
  double tail_indicator;  // max outermost |c_m| times (N/2)^2
};

/// Reference finite-part value of K * u from an N-point transform of u.
/// Throws SpectralResolutionTooLow when the transform tail is both above the
/// coefficient noise floor and significant against sum_m |c_m lambda_m|.
SpectralReference spectral_hfp_reference(const SmoothFactor& u,
                                         const PeriodicDomain& dom, int N);

/// Deterministic random polynomial of the given degree: coefficients drawn
/// uniformly from the complex unit square. With realify, c_{-m} is forced to
/// conj(c_m) (and c_0 real) so the polynomial is real-valued on the real axis.
TrigPoly random_trig_poly(int degree, std::uint64_t seed, bool realify,
                          double period = 1.0);

}  // namespace hfp
