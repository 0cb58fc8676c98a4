#include "hfp/bounds.hpp"

#include <cmath>
#include <numbers>

namespace hfp {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

StripSpec::StripSpec(double sigma_, double tau_) : sigma(sigma_), tau(tau_) {
  if (!(sigma > 0) || !std::isfinite(sigma))
    throw DomainError("StripSpec: sigma must be positive and finite");
  if (!(tau > 0) || !(tau < sigma))
    throw TauOutOfRange("StripSpec: tau must satisfy 0 < tau < sigma");
}

double geometric_decay_factor(long long n, double tau, double T) {
  if (n < 1) throw DomainError("geometric_decay_factor: n must be >= 1");
  if (!(tau > 0) || !(T > 0))
    throw DomainError("geometric_decay_factor: tau and T must be positive");
  const double e = 2.0 * static_cast<double>(n) * kPi * tau / T;
  // q/(1-q) = exp(-e) / (-expm1(-e)); exact at both tiny and huge exponents.
  return std::exp(-e) / (-std::expm1(-e));
}

Complex pole_free_part(Complex z, const SmoothFactor& u, const PeriodicDomain& dom) {
  if (!u.has_complex_eval())
    throw MissingComplexEval("pole_free_part: smooth factor lacks eval_complex");
  if (!u.has_derivatives())
    throw MissingDerivatives("pole_free_part: smooth factor lacks derivs_at_t");
  const auto& d = *u.derivs_at_t;
  const double T = dom.T;

  double dx = z.real() - dom.t;
  dx -= T * std::round(dx / T);
  if (std::hypot(dx, z.imag()) < 1e-3 * T) {
    // Removable limit at the pole; the linear term vanishes with it.
    return (T * T * T / (6.0 * kPi * kPi * kPi))
           * (d[3] - (2.0 * kPi * kPi / (T * T)) * d[1]);
  }

  const Complex w = (kPi / T) * (z - Complex(dom.t, 0.0));
  const Complex s = std::sin(w);
  const Complex c = std::cos(w);
  const Complex kernel = c / (s * s * s);
  const Complex csc2 = 1.0 / (s * s);
  const Complex cot = c / s;
  return kernel * (u.eval_complex(z) - d[0])
         - (T / kPi) * d[1] * csc2
         - (T * T / (2.0 * kPi * kPi)) * d[2] * cot;
}

double two_line_maximum(const std::function<Complex(Complex)>& f,
                        const PeriodicDomain& dom, double tau, int samples) {
  if (!(tau > 0)) throw DomainError("two_line_maximum: tau must be positive");
  if (samples < 1) throw DomainError("two_line_maximum: samples must be >= 1");
  double total = 0.0;
  for (const double line : {tau, -tau}) {
    double mx = 0.0;
    for (int k = 0; k < samples; ++k) {
      const Complex z(dom.a + static_cast<double>(k) * (dom.T / samples), line);
      mx = std::max(mx, std::abs(f(z)));
    }
    total += mx;
  }
  return total;
}

double sample_strip_maximum(const SmoothFactor& u, const PeriodicDomain& dom,
                            double tau, int samples) {
  return two_line_maximum(
      [&u, &dom](Complex z) { return pole_free_part(z, u, dom); }, dom, tau, samples);
}

double rule_error_bound(Rule s, int n, double tau, double m_hat, double T) {
  if (n < 2) throw DomainError("rule_error_bound: n must be >= 2");
  if (m_hat < 0) throw DomainError("rule_error_bound: m_hat must be >= 0");
  const double p1 = geometric_decay_factor(n, tau, T);
  switch (s) {
    case Rule::S0:
      return T * m_hat * p1;
    case Rule::S1:
      return T * m_hat * (p1 + 2.0 * geometric_decay_factor(2LL * n, tau, T));
    case Rule::S2:
      return T * m_hat * (2.0 * p1 + 5.0 * geometric_decay_factor(2LL * n, tau, T)
                          + 2.0 * geometric_decay_factor(4LL * n, tau, T));
    case Rule::Trap:
      break;
  }
  throw DomainError("rule_error_bound: defined for rules S0, S1, S2");
}

double davis_bound(int n, double tau, double m_regular, double T) {
  if (n < 1) throw DomainError("davis_bound: n must be >= 1");
  if (m_regular < 0) throw DomainError("davis_bound: m_regular must be >= 0");
  return T * m_regular * geometric_decay_factor(n, tau, T);
}

BoundReport make_bound_report(Rule s, int n, double tau, double m_hat, double T) {
  BoundReport r;
  r.rule = s;
  r.n = n;
  r.tau = tau;
  r.m_hat = m_hat;
  r.phi_n = geometric_decay_factor(n, tau, T);
  r.phi_2n = geometric_decay_factor(2LL * n, tau, T);
  r.phi_4n = geometric_decay_factor(4LL * n, tau, T);
  r.bound = rule_error_bound(s, n, tau, m_hat, T);
  return r;
}

double runge_strip_halfwidth(double rho, double T) {
  if (!(rho > 1))
    throw DomainError("runge_strip_halfwidth: rho must exceed 1");
  if (!(T > 0)) throw DomainError("runge_strip_halfwidth: period must be positive");
  return (T / (2.0 * kPi)) * std::acosh(rho);
}

}  // namespace hfp
