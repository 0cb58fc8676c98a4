#pragma once

#include <cmath>
#include <complex>

namespace hfp {

/// Neumaier compensated accumulator. Terms near the pole grow like n^3 while
/// the totals stay O(n), so plain summation would lose digits the tolerances
/// cannot spare.
class CompensatedSum {
 public:
  void add(double x) {
    const double s = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - s) + x;
    else
      comp_ += (x - s) + sum_;
    sum_ = s;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(const std::complex<double>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace hfp
