#include "hfp/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hfp/kernel.hpp"
#include "hfp/summation.hpp"

namespace hfp {

namespace {

constexpr double kPi = std::numbers::pi;

Complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

TrigPoly::TrigPoly(double period, std::vector<Complex> coeffs)
    : period_(period), c_(std::move(coeffs)) {
  if (!(period_ > 0) || !std::isfinite(period_))
    throw DomainError("TrigPoly: period must be positive and finite");
  if (c_.empty() || c_.size() % 2 == 0)
    throw DomainError("TrigPoly: coefficient vector must have odd size 2M+1");
  degree_ = static_cast<int>(c_.size() / 2);
  // Degree counts the outermost pair with any exactly nonzero entry.
  while (degree_ > 0 && c_.front() == Complex(0.0, 0.0) && c_.back() == Complex(0.0, 0.0)) {
    c_.erase(c_.begin());
    c_.pop_back();
    --degree_;
  }
}

Complex TrigPoly::coeff(long long m) const {
  if (m < -degree_ || m > degree_) return {0.0, 0.0};
  return c_[static_cast<std::size_t>(m + degree_)];
}

Complex TrigPoly::operator()(double x) const {
  ComplexCompensatedSum acc;
  for (long long m = -degree_; m <= degree_; ++m)
    acc.add(coeff(m) * unit_phase(2.0 * kPi * static_cast<double>(m) * (x / period_)));
  return acc.value();
}

Complex TrigPoly::operator()(Complex z) const {
  const Complex i(0.0, 1.0);
  ComplexCompensatedSum acc;
  for (long long m = -degree_; m <= degree_; ++m)
    acc.add(coeff(m) * std::exp(i * (2.0 * kPi * static_cast<double>(m) / period_) * z));
  return acc.value();
}

TrigPoly dft_of_samples(const std::vector<Complex>& samples, double period, double anchor) {
  const int N = static_cast<int>(samples.size());
  if (N < 8 || N % 2 != 0)
    throw DomainError("dft_of_samples: sample count must be even and >= 8");
  const int M = N / 2 - 1;

  // Roots of unity indexed by (m k mod N); integer reduction keeps the phase
  // exact for every product m k.
  std::vector<Complex> w(static_cast<std::size_t>(N));
  for (int q = 0; q < N; ++q)
    w[static_cast<std::size_t>(q)] = unit_phase(-2.0 * kPi * q / N);

  std::vector<Complex> coeffs(static_cast<std::size_t>(2 * M + 1));
  for (int m = -M; m <= M; ++m) {
    ComplexCompensatedSum acc;
    for (int k = 0; k < N; ++k) {
      const long long q = ((static_cast<long long>(m) * k) % N + N) % N;
      acc.add(samples[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(q)]);
    }
    coeffs[static_cast<std::size_t>(m + M)] = acc.value() / static_cast<double>(N);
  }

  // Samples taken at anchor + k T/N yield coefficients in the frame shifted by
  // the anchor; rotate each mode back so the result multiplies e^{i 2 pi m x/T}
  // with absolute x. Reducing m * (anchor/T) mod 1 first keeps the rotation
  // angle small, so no accuracy is lost at high mode numbers.
  if (anchor != 0.0) {
    const double frac = anchor / period;
    for (int m = -M; m <= M; ++m) {
      const double cycles = std::remainder(static_cast<double>(m) * frac, 1.0);
      coeffs[static_cast<std::size_t>(m + M)] *= unit_phase(-2.0 * kPi * cycles);
    }
  }
  return TrigPoly(period, std::move(coeffs));
}

TrigPoly fourier_coefficients(const SmoothFactor& u, const PeriodicDomain& dom, int N) {
  if (!u.eval_real) throw DomainError("fourier_coefficients: eval_real missing");
  if (N < 8 || N % 2 != 0)
    throw DomainError("fourier_coefficients: N must be even and >= 8");
  std::vector<Complex> samples(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k)
    samples[static_cast<std::size_t>(k)] = u.eval_real(dom.a + k * (dom.T / N));
  return dft_of_samples(samples, dom.T, dom.a);
}

Complex differentiate_at(const TrigPoly& p, double t, int order) {
  if (order < 1 || order > 3)
    throw DomainError("differentiate_at: order must be 1, 2 or 3");
  const Complex i(0.0, 1.0);
  ComplexCompensatedSum acc;
  for (long long m = -p.degree(); m <= p.degree(); ++m) {
    const Complex rate = i * (2.0 * kPi * static_cast<double>(m) / p.period());
    Complex factor(1.0, 0.0);
    for (int k = 0; k < order; ++k) factor *= rate;
    acc.add(p.coeff(m) * factor * unit_phase(2.0 * kPi * static_cast<double>(m) * (t / p.period())));
  }
  return acc.value();
}

Complex hfp_reference(const TrigPoly& p, const PeriodicDomain& dom) {
  ComplexCompensatedSum acc;
  for (long long m = -p.degree(); m <= p.degree(); ++m) {
    if (m == 0) continue;
    acc.add(p.coeff(m) * kernel_eigenvalue(m, dom.T) * fourier_mode(m, dom.t, dom));
  }
  return acc.value();
}

SpectralReference spectral_hfp_reference(const SmoothFactor& u,
                                         const PeriodicDomain& dom, int N) {
  const TrigPoly p = fourier_coefficients(u, dom, N);
  const long long M = N / 2 - 1;

  double max_coeff = 0.0;
  double weighted = 0.0;
  for (long long m = -M; m <= M; ++m) {
    const double cm = std::abs(p.coeff(m));
    max_coeff = std::max(max_coeff, cm);
    weighted += cm * std::abs(kernel_eigenvalue(m, dom.T));
  }
  const double tail =
      std::max(std::max(std::abs(p.coeff(M)), std::abs(p.coeff(-M))),
               std::max(std::abs(p.coeff(M - 1)), std::abs(p.coeff(-(M - 1)))));
  const double tail_indicator = tail * (N / 2.0) * (N / 2.0);

  // A tail at the double-precision noise floor of the transform is not
  // undersampling, however small the weighted total.
  const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * max_coeff;
  if (tail > noise_floor && tail_indicator > 1e-8 * weighted)
    throw SpectralResolutionTooLow(
        "spectral_hfp_reference: transform tail too large; increase N");

  return {hfp_reference(p, dom), tail_indicator};
}

TrigPoly random_trig_poly(int degree, std::uint64_t seed, bool realify, double period) {
  if (degree < 0) throw DomainError("random_trig_poly: degree must be >= 0");
  std::mt19937_64 rng(seed);
  // Uniform in [0, 1) with fully specified bits; avoids distribution objects
  // whose output is implementation-defined.
  auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Complex> coeffs(static_cast<std::size_t>(2 * degree + 1));
  if (realify) {
    coeffs[static_cast<std::size_t>(degree)] = Complex(u01(), 0.0);
    for (int m = 1; m <= degree; ++m) {
      const Complex c(u01(), u01());
      coeffs[static_cast<std::size_t>(degree + m)] = c;
      coeffs[static_cast<std::size_t>(degree - m)] = std::conj(c);
    }
  } else {
    for (int m = -degree; m <= degree; ++m) {
      const double re = u01();
      const double im = u01();
      coeffs[static_cast<std::size_t>(m + degree)] = Complex(re, im);
    }
  }
  return TrigPoly(period, std::move(coeffs));
}

}  // namespace hfp
