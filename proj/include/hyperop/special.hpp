#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hyperop/compensated.hpp"
#include "hyperop/errors.hpp"

namespace hyperop {

using Complex = std::complex<double>;

namespace detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLogPi = 1.144729885849400174143427351353058712;
inline constexpr double kHalfLog2Pi = 0.918938533204672741780329736405617639;

inline bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log(sin(pi z)) up to an integer multiple of 2 pi i, stable for large |Im z|.
inline Complex log_sin_pi(Complex z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
  const Complex ipz = Complex(0.0, kPi) * z;
  if (z.imag() > 0.0) {
    // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
    return -ipz + std::log((1.0 - std::exp(2.0 * ipz)) * Complex(0.0, 0.5));
  }
  return ipz + std::log((1.0 - std::exp(-2.0 * ipz)) * Complex(0.0, -0.5));
}

}  // namespace detail

// Principal-branch-free complex log Gamma (the imaginary part may differ
// from log(Gamma(z)) by 2 pi i k; every use here exponentiates sums of
// values, which is insensitive to that). Lanczos approximation with
// g = 607/128, 15 terms, reflected for Re(z) < 1/2; relative accuracy of
// exp(log_gamma) is ~1e-14 on |z| <= 200.
inline Complex log_gamma(Complex z) {
  if (detail::is_nonpositive_integer(z)) throw pole_error("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5) return detail::kLogPi - detail::log_sin_pi(z) - log_gamma(1.0 - z);

  static constexpr double g = 607.0 / 128.0;
  static constexpr double c[15] = {
      0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
      14.136097974741747174,     -0.49191381609762019978,    0.33994649984811888699e-4,
      0.46523628927048575665e-4, -0.98374475304879564677e-4, 0.15808870322491248884e-3,
      -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
      0.84418223983852743293e-4, -0.26190838401581408670e-4, 0.36899182659531622704e-5,
  };

  const Complex zm1 = z - 1.0;
  Complex s = c[0];
  for (int k = 1; k < 15; ++k) s += c[k] / (zm1 + static_cast<double>(k));
  const Complex t = zm1 + g + 0.5;
  return detail::kHalfLog2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(s);
}

// A product/quotient of Gamma values evaluated through log_gamma sums, so
// ratios stay finite when the individual factors overflow.
struct GammaRatio {
  std::vector<Complex> numerator_args;
  std::vector<Complex> denominator_args;

  Complex value() const {
    Complex acc{};
    for (const Complex& a : numerator_args) acc += log_gamma(a);
    for (const Complex& a : denominator_args) acc -= log_gamma(a);
    return std::exp(acc);
  }
};

inline Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
  Complex acc{};
  for (const Complex& a : num) acc += log_gamma(a);
  for (const Complex& a : den) acc -= log_gamma(a);
  return std::exp(acc);
}

// Gauss hypergeometric polynomial F(-m, beta; gamma; x), summed by forward
// recurrence on the term ratio so no Pochhammer product is ever formed.
// A vanishing (gamma)_j inside the sum is a hard error. The recurrence runs
// in extended precision and rounds once: the triangular identities built
// from these values cancel large entries against each other, and plain
// double evaluation would leave the identity residuals near their
// certification thresholds.
inline Complex gauss_f_poly(int m, Complex beta, Complex gamma, Complex x) {
  if (m < 0) throw std::invalid_argument("gauss_f_poly: degree must be non-negative");
  using LComplex = std::complex<long double>;
  const LComplex bl(beta.real(), beta.imag());
  const LComplex gl(gamma.real(), gamma.imag());
  const LComplex xl(x.real(), x.imag());
  LComplex sum{1.0L, 0.0L};
  LComplex term{1.0L, 0.0L};
  for (int j = 0; j < m; ++j) {
    if (gamma + static_cast<double>(j) == Complex{})
      throw pole_error("gauss_f_poly: vanishing Pochhammer factor in denominator");
    const LComplex denom = (gl + static_cast<long double>(j)) * static_cast<long double>(j + 1);
    term *= (static_cast<long double>(j - m)) * (bl + static_cast<long double>(j)) / denom * xl;
    sum += term;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Kummer confluent hypergeometric Phi(alpha; beta; z) by its power series.
// Terms are accumulated until ten consecutive terms fall below 1e-16 of the
// partial sum.
inline Complex confluent_phi_series(Complex alpha, Complex beta, Complex z) {
  if (detail::is_nonpositive_integer(beta))
    throw pole_error("confluent_phi_series: beta is a non-positive integer");
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  int stable = 0;
  for (int j = 0; j < 100000; ++j) {
    term *= (alpha + static_cast<double>(j)) /
            ((beta + static_cast<double>(j)) * static_cast<double>(j + 1)) * z;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      if (++stable >= 10) return sum;
    } else {
      stable = 0;
    }
  }
  throw convergence_error("confluent_phi_series: stopping rule not reached in 1e5 terms");
}

}  // namespace hyperop
