#include "hfp/functions.hpp"

#include <cmath>
#include <numbers>

namespace hfp {

namespace {

constexpr long double kPiExt = std::numbers::pi_v<long double>;

using ExtComplex = std::complex<long double>;

Complex round_once(const ExtComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

ExtComplex unit_phase_ext(long double theta) {
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

SmoothFactor make_constant_factor(Complex c) {
  SmoothFactor u;
  u.eval_real = [c](double) { return c; };
  u.eval_complex = [c](Complex) { return c; };
  u.eval_real_ext = [c](long double) { return ExtComplex(c); };
  u.derivs_at_t = {{c, Complex(0.0), Complex(0.0), Complex(0.0)}};
  return u;
}

SmoothFactor make_fourier_mode_factor(long long m, const PeriodicDomain& dom) {
  const double omega = 2.0 * std::numbers::pi * static_cast<double>(m) / dom.T;
  const long double omega_ext =
      2.0L * kPiExt * static_cast<long double>(m) / static_cast<long double>(dom.T);
  const Complex i(0.0, 1.0);
  SmoothFactor u;
  u.eval_real = [omega](double x) {
    return Complex(std::cos(omega * x), std::sin(omega * x));
  };
  u.eval_complex = [omega, i](Complex z) { return std::exp(i * omega * z); };
  u.eval_real_ext = [omega_ext](long double x) { return unit_phase_ext(omega_ext * x); };

  const ExtComplex at_t = unit_phase_ext(omega_ext * static_cast<long double>(dom.t));
  const ExtComplex rate(0.0L, omega_ext);
  u.derivs_at_t = {{round_once(at_t), round_once(rate * at_t),
                    round_once(rate * rate * at_t), round_once(rate * rate * rate * at_t)}};
  return u;
}

SmoothFactor make_runge_factor(double rho, const PeriodicDomain& dom) {
  if (!(rho > 1)) throw DomainError("make_runge_factor: rho must exceed 1");
  const double omega = 2.0 * std::numbers::pi / dom.T;
  const long double omega_ext = 2.0L * kPiExt / static_cast<long double>(dom.T);
  const long double rho_ext = rho;
  SmoothFactor u;
  u.eval_real = [rho, omega](double x) {
    return Complex(1.0 / (rho - std::cos(omega * x)), 0.0);
  };
  u.eval_complex = [rho, omega](Complex z) {
    return 1.0 / (rho - std::cos(omega * z));
  };
  u.eval_real_ext = [rho_ext, omega_ext](long double x) {
    return ExtComplex(1.0L / (rho_ext - std::cos(omega_ext * x)), 0.0L);
  };
  // Derivatives of 1/D with D = rho - cos(omega t):
  //   u'   = -omega s / D^2
  //   u''  = -omega^2 (c / D^2 - 2 s^2 / D^3)
  //   u''' =  omega^3 s (1 / D^2 + 6 c / D^3 - 6 s^2 / D^4)
  const long double s = std::sin(omega_ext * static_cast<long double>(dom.t));
  const long double c = std::cos(omega_ext * static_cast<long double>(dom.t));
  const long double D = rho_ext - c;
  const long double D2 = D * D;
  const long double D3 = D2 * D;
  const long double D4 = D3 * D;
  const long double u0 = 1.0L / D;
  const long double u1 = -omega_ext * s / D2;
  const long double u2 = -omega_ext * omega_ext * (c / D2 - 2.0L * s * s / D3);
  const long double u3 =
      omega_ext * omega_ext * omega_ext * s * (1.0L / D2 + 6.0L * c / D3 - 6.0L * s * s / D4);
  u.derivs_at_t = {{Complex(static_cast<double>(u0)), Complex(static_cast<double>(u1)),
                    Complex(static_cast<double>(u2)), Complex(static_cast<double>(u3))}};
  return u;
}

SmoothFactor make_trig_poly_factor(const TrigPoly& p, const PeriodicDomain& dom) {
  if (std::abs(p.period() - dom.T) > 1e-12 * dom.T)
    throw DomainError("make_trig_poly_factor: polynomial period differs from the domain period");
  SmoothFactor u;
  u.eval_real = [p](double x) { return p(x); };
  u.eval_complex = [p](Complex z) { return p(z); };
  u.eval_real_ext = [p](long double x) {
    const long double ratio = x / static_cast<long double>(p.period());
    ExtComplex acc(0.0L, 0.0L);
    for (long long m = -p.degree(); m <= p.degree(); ++m)
      acc += ExtComplex(p.coeff(m)) *
             unit_phase_ext(2.0L * kPiExt * static_cast<long double>(m) * ratio);
    return acc;
  };
  u.derivs_at_t = {{p(dom.t), differentiate_at(p, dom.t, 1),
                    differentiate_at(p, dom.t, 2), differentiate_at(p, dom.t, 3)}};
  return u;
}

Complex runge_hfp_value(double rho, const PeriodicDomain& dom) {
  if (!(rho > 1)) throw DomainError("runge_hfp_value: rho must exceed 1");
  // The factor 1/(rho - cos(2 pi x / T)) has Fourier coefficients
  // c_m = (2 q / (1 - q^2)) q^{|m|} with q = rho - sqrt(rho^2 - 1), so the
  // eigenvalue relation sums to
  //   sum_{m >= 1} 4 T m^2 c_m sin(2 pi m t / T)
  //     = (8 T q / (1 - q^2)) Im[ w (1 + w) / (1 - w)^3 ],  w = q e^{i 2 pi t / T},
  // using sum_{m >= 1} m^2 w^m = w (1 + w) / (1 - w)^3.
  const long double rho_ext = rho;
  const long double T = dom.T;
  const long double q = rho_ext - std::sqrt(rho_ext * rho_ext - 1.0L);
  const long double theta =
      2.0L * kPiExt * (static_cast<long double>(dom.t) / T);
  const ExtComplex w = q * unit_phase_ext(theta);
  const ExtComplex one(1.0L, 0.0L);
  const ExtComplex ratio = w * (one + w) / ((one - w) * (one - w) * (one - w));
  const long double value = 8.0L * T * q / (1.0L - q * q) * ratio.imag();
  return {static_cast<double>(value), 0.0};
}

}  // namespace hfp
