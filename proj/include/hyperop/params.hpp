#pragma once

#include <cmath>
#include <complex>

#include "hyperop/errors.hpp"

namespace hyperop {

using Complex = std::complex<double>;

enum class ParamRange {
  operator_range,       // Re(nu) < 0: the operator itself is defined
  representation_only,  // Re(nu) < 1: loop-contour formulas remain valid
};

// The constant pair (x, nu) with x outside R^- and x != 1, plus the derived
// constants, always recomputed from (x, nu):
//
//   c      = (1 - nu x) / (1 - x)
//   t_hat  = nu / (nu - 1)
//   tau_hat = t_hat^{-nu} (1 - t_hat)
class Params {
 public:
  static Params make(Complex x, Complex nu, ParamRange range = ParamRange::operator_range) {
    if (x.imag() == 0.0 && (x.real() <= 0.0 || x.real() == 1.0))
      throw std::domain_error("Params: x must avoid the negative real axis and the point 1");
    const double limit = range == ParamRange::operator_range ? 0.0 : 1.0;
    if (!(nu.real() < limit))
      throw std::domain_error(range == ParamRange::operator_range
                                  ? "Params: operator range requires Re(nu) < 0"
                                  : "Params: representation range requires Re(nu) < 1");
    return Params(x, nu);
  }

  Complex x() const { return x_; }
  Complex nu() const { return nu_; }

  Complex c() const { return (1.0 - nu_ * x_) / (1.0 - x_); }
  Complex t_hat() const { return nu_ / (nu_ - 1.0); }
  Complex tau_hat() const {
    const Complex th = t_hat();
    return std::pow(th, -nu_) * (1.0 - th);
  }

  bool operator_certified() const { return nu_.real() < 0.0; }

  // True when both parameters are real with x in (0,1) and nu < 0; the
  // Volterra branch construction only exists in that case.
  bool real_case() const {
    return x_.imag() == 0.0 && nu_.imag() == 0.0 && x_.real() > 0.0 && x_.real() < 1.0 &&
           nu_.real() < 0.0;
  }

 private:
  Params(Complex x, Complex nu) : x_(x), nu_(nu) {}
  Complex x_;
  Complex nu_;
};

}  // namespace hyperop
