#include "hfp/core.hpp"

#include <cmath>

namespace hfp {

PeriodicDomain::PeriodicDomain(double a_, double b_, double t_)
    : a(a_), b(b_), t(t_), T(b_ - a_) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
    throw DomainError("PeriodicDomain: endpoints must be finite with b > a");
  if (!std::isfinite(t) || !(t > a && t < b))
    throw DomainError("PeriodicDomain: singular point must lie strictly inside (a, b)");
}

const char* to_string(Rule s) {
  switch (s) {
    case Rule::S0: return "S0";
    case Rule::S1: return "S1";
    case Rule::S2: return "S2";
    case Rule::Trap: return "TRAP";
  }
  return "?";
}

const char* to_string(DerivSource d) {
  switch (d) {
    case DerivSource::Exact: return "EXACT";
    case DerivSource::Spectral: return "SPECTRAL";
    case DerivSource::None: return "NONE";
  }
  return "?";
}

double reduce_to_period(double x, const PeriodicDomain& dom) {
  if (!std::isfinite(x)) throw DomainError("reduce_to_period: x must be finite");
  if (x >= dom.a && x < dom.b) return x;
  const double k = std::floor((x - dom.a) / dom.T);
  double r = x - k * dom.T;
  // Rounding of k*T can leave r one step outside [a, b); nudge once.
  if (r >= dom.b) r -= dom.T;
  if (r < dom.a) r += dom.T;
  if (r >= dom.b || r < dom.a) r = dom.a;
  return r;
}

double distance_to_singularity(double x, const PeriodicDomain& dom) {
  if (!std::isfinite(x)) throw DomainError("distance_to_singularity: x must be finite");
  double y = x - dom.t;
  y -= dom.T * std::round(y / dom.T);
  return std::min(std::abs(y), 0.5 * dom.T);
}

void check_smooth_factor(const SmoothFactor& u, const PeriodicDomain& dom,
                         int samples) {
  if (!u.eval_real) throw DomainError("check_smooth_factor: eval_real missing");
  if (samples < 1) throw DomainError("check_smooth_factor: samples must be >= 1");
  for (int i = 0; i < samples; ++i) {
    const double x = dom.a + (i + 0.3) * (dom.T / samples);
    const Complex v = u.eval_real(x);
    const Complex vT = u.eval_real(x + dom.T);
    if (std::abs(vT - v) > 1e-12 * (1.0 + std::abs(v)))
      throw DomainError("check_smooth_factor: eval_real is not periodic");
    if (u.has_complex_eval()) {
      const Complex vc = u.eval_complex(Complex(x, 0.0));
      if (std::abs(vc - v) > 1e-12 * (1.0 + std::abs(v)))
        throw DomainError(
            "check_smooth_factor: eval_complex disagrees with eval_real on the real axis");
    }
  }
}

}  // namespace hfp
