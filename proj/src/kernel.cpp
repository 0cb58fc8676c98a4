#include "hfp/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "hfp/summation.hpp"

namespace hfp {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(long long m) { return (m > 0) - (m < 0); }

void require_grid(long long n) {
  if (n < 2) throw DomainError("grid sums require n >= 2");
}

}  // namespace

double kernel_value(double x, const PeriodicDomain& dom) {
  const double delta_min = 1e-13 * dom.T;
  if (distance_to_singularity(x, dom) < delta_min)
    throw SingularityTooClose("kernel_value: evaluation point within guard radius of a pole");
  const double w = kPi * (x - dom.t) / dom.T;
  const double s = std::sin(w);
  return std::cos(w) / (s * s * s);
}

Complex fourier_mode(long long m, double x, const PeriodicDomain& dom) {
  const double theta = 2.0 * kPi * static_cast<double>(m) * (x / dom.T);
  return {std::cos(theta), std::sin(theta)};
}

Complex kernel_eigenvalue(long long m, double T) {
  if (!(T > 0)) throw DomainError("kernel_eigenvalue: period must be positive");
  const double mag = 2.0 * T * static_cast<double>(m) * static_cast<double>(m);
  return {0.0, -sign_of(m) * mag};
}

Complex mode_hfp_value(long long m, const PeriodicDomain& dom) {
  return kernel_eigenvalue(m, dom.T) * fourier_mode(m, dom.t, dom);
}

Complex mode_hfp_coefficient(long long m) {
  const double mag = 4.0 * kPi * static_cast<double>(m) * static_cast<double>(m);
  return {0.0, -sign_of(m) * mag};
}

double kernel_sine_sum_closed(long long m, long long n) {
  require_grid(n);
  const long long r = std::llabs(m) % n;
  // (2/3) r n^2 - 2 r^2 n + (4/3) r^3 factored so the integer part is exact.
  const long long prod = r * (n - r) * (n - 2 * r);
  const double value = 2.0 * static_cast<double>(prod) / 3.0;
  return m < 0 ? -value : value;
}

double kernel_sine_sum_direct(long long m, long long n) {
  require_grid(n);
  const long long mm = std::llabs(m);
  CompensatedSum acc;
  for (long long j = 1; j < n; ++j) {
    const double half = kPi * static_cast<double>(j) / static_cast<double>(n);  // y_j / 2
    const double s = std::sin(half);
    const double kern = std::cos(half) / (s * s * s);
    // sin(m y_j) = sin(2 pi (m j mod n) / n); reducing in integers keeps the
    // phase accurate for large m j.
    const long long q = (mm * j) % n;
    const double ms = std::sin(2.0 * kPi * static_cast<double>(q) / static_cast<double>(n));
    acc.add(kern * ms);
  }
  // Negating every term equals negating the total exactly.
  return m < 0 ? -acc.value() : acc.value();
}

double cot_sine_sum(long long m, long long n) {
  require_grid(n);
  if (m < 1) throw DomainError("cot_sine_sum: m must be >= 1");
  CompensatedSum acc;
  for (long long j = 1; j < n; ++j) {
    const double half = kPi * static_cast<double>(j) / static_cast<double>(n);
    const double cot = std::cos(half) / std::sin(half);
    const long long q = (m * j) % n;
    const double ms = std::sin(2.0 * kPi * static_cast<double>(q) / static_cast<double>(n));
    acc.add(cot * ms);
  }
  return acc.value();
}

double cot_sine_sum_closed(long long m, long long n) {
  require_grid(n);
  if (m < 1 || m > n - 1)
    throw DomainError("cot_sine_sum_closed: closed form requires 1 <= m <= n-1");
  return static_cast<double>(n - 2 * m);
}

double offset_sine_ratio_sum(long long k, long long n) {
  require_grid(n);
  if (k < 1) throw DomainError("offset_sine_ratio_sum: k must be >= 1");
  CompensatedSum acc;
  for (long long j = 1; j < n; ++j) {
    const double half = kPi * static_cast<double>(j) / static_cast<double>(n);
    // sin(k y_j - y_j/2) = sin(pi (2k-1) j / n), period 2n in the integer (2k-1) j.
    const long long q = ((2 * k - 1) * j) % (2 * n);
    const double num = std::sin(kPi * static_cast<double>(q) / static_cast<double>(n));
    acc.add(num / std::sin(half));
  }
  return acc.value();
}

double offset_sine_ratio_sum_closed(long long k, long long n) {
  require_grid(n);
  if (k < 1 || k > n - 1)
    throw DomainError("offset_sine_ratio_sum_closed: closed form requires 1 <= k <= n-1");
  return static_cast<double>(n - 2 * k + 1);
}

double inv_sin2_sum(long long n) {
  require_grid(n);
  CompensatedSum acc;
  for (long long j = 1; j < n; ++j) {
    const double s = std::sin(kPi * static_cast<double>(j) / static_cast<double>(n));
    acc.add(1.0 / (s * s));
  }
  return acc.value();
}

double inv_sin2_sum_closed(long long n) {
  require_grid(n);
  return static_cast<double>(n * n - 1) / 3.0;
}

}  // namespace hfp
