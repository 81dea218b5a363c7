#pragma once

#include <cmath>
#include <complex>

namespace hyperop::detail {

// Neumaier-compensated accumulator, componentwise over the complex parts.
// The triangular identities cancel products of size ~1e6 down to O(1);
// plain summation would leave residuals near the certification tolerances.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    acc(sr_, cr_, v.real());
    acc(si_, ci_, v.imag());
  }
  std::complex<double> value() const { return {sr_ + cr_, si_ + ci_}; }

 private:
  static void acc(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double sr_ = 0.0, cr_ = 0.0, si_ = 0.0, ci_ = 0.0;
};

}  // namespace hyperop::detail
