#include "hfp/rules.hpp"

#include <cmath>
#include <numbers>

#include "hfp/kernel.hpp"
#include "hfp/spectral.hpp"
#include "hfp/summation.hpp"

namespace hfp {

namespace {

constexpr long double kPiExt = std::numbers::pi_v<long double>;

using ExtComplex = std::complex<long double>;

void require_n(int n) {
  if (n < 2) throw DomainError("quadrature rules require n >= 2");
}

QuadratureOutcome make_outcome(Rule s, int n, Complex value, DerivSource src) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw DomainError("quadrature produced a non-finite value");
  return {s, n, value, src};
}

Complex round_once(const ExtComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Neumaier-compensated accumulator in extended precision, per component.
struct ExtendedSum {
  long double sum_re = 0.0L, comp_re = 0.0L;
  long double sum_im = 0.0L, comp_im = 0.0L;

  static void add_one(long double& sum, long double& comp, long double v) {
    const long double next = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - next) + v;
    else
      comp += (v - next) + sum;
    sum = next;
  }
  void add(const ExtComplex& z) {
    add_one(sum_re, comp_re, z.real());
    add_one(sum_im, comp_im, z.imag());
  }
  ExtComplex value() const { return {sum_re + comp_re, sum_im + comp_im}; }
};

// Third-order-pole kernel at the grid offset s = (p/den) T from the pole,
// 0 < p < den. The kernel depends on s only through the ratio, which is exact
// in integers; offsets past the midpoint reflect to den - p through the
// kernel's odd symmetry. Both ends of the grid therefore see a sine argument
// built from an exact small ratio, and neither pole image magnifies abscissa
// rounding into the sum.
long double kernel_from_grid(long long p, long long den) {
  const bool upper = 2 * p > den;
  const long long pr = upper ? den - p : p;
  const long double w =
      kPiExt * (static_cast<long double>(pr) / static_cast<long double>(den));
  const long double sn = std::sin(w);
  const long double k = std::cos(w) / (sn * sn * sn);
  return upper ? -k : k;
}

ExtComplex factor_at_offset(const SmoothFactor& u, const PeriodicDomain& dom,
                            long double offset) {
  const long double x = static_cast<long double>(dom.t) + offset;
  if (u.eval_real_ext) return u.eval_real_ext(x);
  const Complex v = u.eval_real(reduce_to_period(static_cast<double>(x), dom));
  return {static_cast<long double>(v.real()), static_cast<long double>(v.imag())};
}

// h * sum_{j=1}^{n-1} K(j h) u(t + j h) in extended precision.
ExtComplex punctured_sum_ext(const SmoothFactor& u, const PeriodicDomain& dom, int n) {
  const long double h = static_cast<long double>(dom.T) / n;
  ExtendedSum acc;
  for (int j = 1; j < n; ++j) {
    const long double s = static_cast<long double>(j) * h;
    acc.add(kernel_from_grid(j, n) * factor_at_offset(u, dom, s));
  }
  return h * acc.value();
}

// step * sum_{j=1}^{count} K((j - 1/2) step) u(t + (j - 1/2) step), with
// count points over the period, so the kernel offsets are (2j-1)/(2 count).
ExtComplex midpoint_sum_ext(const SmoothFactor& u, const PeriodicDomain& dom,
                            long double step, int count) {
  ExtendedSum acc;
  for (int j = 1; j <= count; ++j) {
    const long double s = (static_cast<long double>(j) - 0.5L) * step;
    acc.add(kernel_from_grid(2LL * j - 1, 2LL * count) * factor_at_offset(u, dom, s));
  }
  return step * acc.value();
}

// Interior sums of the raw-integrand path; the map only accepts double
// abscissas, so these stay in double with compensated accumulation.
ExtComplex punctured_sum_raw(const Integrand& f, int n) {
  const PeriodicDomain& dom = f.domain();
  const double h = dom.T / n;
  ComplexCompensatedSum acc;
  for (int j = 1; j < n; ++j)
    acc.add(f(reduce_to_period(dom.t + static_cast<double>(j) * h, dom)));
  const Complex v = h * acc.value();
  return {v.real(), v.imag()};
}

ExtComplex midpoint_sum_raw(const Integrand& f, double step, int count) {
  const PeriodicDomain& dom = f.domain();
  ComplexCompensatedSum acc;
  for (int j = 1; j <= count; ++j)
    acc.add(f(reduce_to_period(dom.t + (static_cast<double>(j) - 0.5) * step, dom)));
  const Complex v = step * acc.value();
  return {v.real(), v.imag()};
}

ExtComplex punctured_sum(const Integrand& f, int n) {
  if (f.kind() == Integrand::Kind::KernelTimesU)
    return punctured_sum_ext(f.smooth_factor(), f.domain(), n);
  return punctured_sum_raw(f, n);
}

ExtComplex midpoint_sum(const Integrand& f, int n, MidpointRefine refine) {
  const int count = refine == MidpointRefine::Full ? n : 2 * n;
  if (f.kind() == Integrand::Kind::KernelTimesU) {
    const long double h = static_cast<long double>(f.domain().T) / n;
    const long double step = refine == MidpointRefine::Full ? h : 0.5L * h;
    return midpoint_sum_ext(f.smooth_factor(), f.domain(), step, count);
  }
  const double h = f.domain().T / n;
  const double step = refine == MidpointRefine::Full ? h : 0.5 * h;
  return midpoint_sum_raw(f, step, count);
}

}  // namespace

Integrand Integrand::kernel_times_u(const PeriodicDomain& dom, SmoothFactor u) {
  if (!u.eval_real) throw DomainError("Integrand: smooth factor must supply eval_real");
  Integrand f(dom, Kind::KernelTimesU);
  f.u_ = std::move(u);
  return f;
}

Integrand Integrand::raw(const PeriodicDomain& dom, std::function<Complex(double)> fn,
                         DerivativeBundle derivatives) {
  if (!fn) throw DomainError("Integrand: raw map must be callable");
  Integrand f(dom, Kind::RawF);
  f.raw_f_ = std::move(fn);
  f.raw_d_ = derivatives;
  return f;
}

Complex Integrand::operator()(double x) const {
  if (kind_ == Kind::KernelTimesU) return kernel_value(x, dom_) * u_.eval_real(x);
  if (distance_to_singularity(x, dom_) < 1e-13 * dom_.T)
    throw SingularityTooClose("Integrand: evaluation point within guard radius of a pole");
  return raw_f_(x);
}

const SmoothFactor& Integrand::smooth_factor() const {
  if (kind_ != Kind::KernelTimesU)
    throw DomainError("Integrand: raw integrand has no smooth factor");
  return u_;
}

const DerivativeBundle& Integrand::raw_derivatives() const {
  if (kind_ != Kind::RawF)
    throw DomainError("Integrand: kernel integrand carries no raw bundle");
  return *raw_d_;
}

Complex punctured_trapezoid_sum(const Integrand& f, int n) {
  require_n(n);
  return round_once(punctured_sum(f, n));
}

Complex midpoint_offset_sum(const Integrand& f, int n, MidpointRefine refine) {
  require_n(n);
  return round_once(midpoint_sum(f, n, refine));
}

QuadratureOutcome rule_s0(const Integrand& f, const DerivativeBundle& d, int n) {
  require_n(n);
  const long double h = static_cast<long double>(f.domain().T) / n;
  const ExtComplex g1(d.g1), g3(d.g3);
  const ExtComplex value = punctured_sum(f, n)
                           - (kPiExt * kPiExt / 3.0L) * g1 / h
                           + (1.0L / 6.0L) * g3 * h;
  return make_outcome(Rule::S0, n, round_once(value), d.source);
}

QuadratureOutcome rule_s1(const Integrand& f, const DerivativeBundle& d, int n) {
  require_n(n);
  const long double h = static_cast<long double>(f.domain().T) / n;
  const ExtComplex g1(d.g1);
  const ExtComplex value = midpoint_sum(f, n, MidpointRefine::Full)
                           - kPiExt * kPiExt * g1 / h;
  return make_outcome(Rule::S1, n, round_once(value), d.source);
}

QuadratureOutcome rule_s2(const Integrand& f, int n) {
  require_n(n);
  const ExtComplex value = 2.0L * midpoint_sum(f, n, MidpointRefine::Full)
                           - midpoint_sum(f, n, MidpointRefine::Half);
  return make_outcome(Rule::S2, n, round_once(value), DerivSource::None);
}

QuadratureOutcome apply_rule(Rule s, const Integrand& f,
                             const std::optional<DerivativeBundle>& d, int n) {
  switch (s) {
    case Rule::S0:
      if (!d) throw MissingDerivatives("rule S0 needs a derivative bundle");
      return rule_s0(f, *d, n);
    case Rule::S1:
      if (!d) throw MissingDerivatives("rule S1 needs a derivative bundle");
      return rule_s1(f, *d, n);
    case Rule::S2:
      return rule_s2(f, n);
    case Rule::Trap:
      throw DomainError("apply_rule: the trapezoid rule takes a regular integrand");
  }
  throw DomainError("apply_rule: unknown rule");
}

Complex trapezoid(const std::function<Complex(double)>& f,
                  const PeriodicDomain& dom, int n) {
  if (n < 1) throw DomainError("trapezoid: n must be >= 1");
  const double h = dom.T / n;
  ComplexCompensatedSum acc;
  acc.add(0.5 * (f(dom.a) + f(dom.b)));
  for (int j = 1; j < n; ++j) acc.add(f(dom.a + static_cast<double>(j) * h));
  return h * acc.value();
}

DerivativeBundle resolve_derivatives(const Integrand& f, const DerivativeStrategy& strategy) {
  const PeriodicDomain& dom = f.domain();
  if (f.kind() == Integrand::Kind::RawF) {
    if (strategy.kind == DerivSource::Exact) return f.raw_derivatives();
    throw MissingDerivatives(
        "resolve_derivatives: a raw integrand exposes no smooth factor to sample");
  }

  // (T/pi)^3 in extended precision: the bundle is rounded to double exactly
  // once, and the rules divide g1 by h, so every spared ulp here matters.
  const long double ratio = static_cast<long double>(dom.T) / kPiExt;
  const long double scale = ratio * ratio * ratio;
  if (strategy.kind == DerivSource::Exact) {
    const SmoothFactor& u = f.smooth_factor();
    if (!u.has_derivatives())
      throw MissingDerivatives("resolve_derivatives: smooth factor lacks derivs_at_t");
    const auto& d = *u.derivs_at_t;
    return {round_once(scale * ExtComplex(d[1])), round_once(scale * ExtComplex(d[3])),
            DerivSource::Exact};
  }
  if (strategy.kind == DerivSource::Spectral) {
    const TrigPoly p = fourier_coefficients(f.smooth_factor(), dom, strategy.transform_size);
    double max_coeff = 0.0;
    for (long long m = -p.degree(); m <= p.degree(); ++m)
      max_coeff = std::max(max_coeff, std::abs(p.coeff(m)));
    const long long edge = strategy.transform_size / 2 - 1;
    const double tail = std::max(std::abs(p.coeff(edge)), std::abs(p.coeff(-edge)));
    if (tail > 1e-8 * max_coeff)
      throw SpectralResolutionTooLow(
          "resolve_derivatives: transform tail too large; increase N");
    return {round_once(scale * ExtComplex(differentiate_at(p, dom.t, 1))),
            round_once(scale * ExtComplex(differentiate_at(p, dom.t, 3))),
            DerivSource::Spectral};
  }
  throw DomainError("resolve_derivatives: strategy must be Exact or Spectral");
}

Complex predicted_mode_value(Rule s, long long m, int n, const PeriodicDomain& dom) {
  require_n(n);
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double b_n = kernel_sine_sum_closed(m, n);
  const double b_2n = kernel_sine_sum_closed(m, 2LL * n);
  const double b_4n = kernel_sine_sum_closed(m, 4LL * n);

  double bracket = 0.0;
  switch (s) {
    case Rule::S0:
      bracket = b_n - (2.0 / 3.0) * dm * dn * dn - (4.0 / 3.0) * dm * dm * dm;
      break;
    case Rule::S1:
      bracket = (b_2n - b_n) - 2.0 * dm * dn * dn;
      break;
    case Rule::S2:
      bracket = 2.0 * (b_2n - b_n) - 0.5 * (b_4n - b_2n);
      break;
    case Rule::Trap:
      throw DomainError("predicted_mode_value: no closed form for the trapezoid rule");
  }
  return Complex(0.0, 1.0) * (dom.T / dn) * bracket * fourier_mode(m, dom.t, dom);
}

}  // namespace hfp
