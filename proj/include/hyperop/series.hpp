#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hyperop/errors.hpp"

namespace hyperop {

using Complex = std::complex<double>;

namespace detail {

// Factorials as doubles; 170! is the last one below the overflow bound.
inline const std::vector<double>& factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> f(171);
    f[0] = 1.0;
    for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] * static_cast<double>(k);
    return f;
  }();
  return table;
}

inline double factorial(int n) {
  if (n < 0 || n > 170) throw std::domain_error("factorial: argument outside [0, 170]");
  return factorials()[static_cast<std::size_t>(n)];
}

}  // namespace detail

// Truncated exponential power series of an entire function vanishing at 0:
//
//   f(z) = sum_{l=1}^{N} E_l z^l / l!
//
// The constant coefficient E_0 is implicitly zero and has no stored slot.
// Trailing zero coefficients are kept, so the truncation order is stable
// under arithmetic.
class EntireSeries {
 public:
  EntireSeries() = default;
  explicit EntireSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  static EntireSeries zero(int order) {
    return EntireSeries(std::vector<Complex>(static_cast<std::size_t>(std::max(order, 0))));
  }

  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  // 1-based access to E_l; reads beyond the truncation order are zero.
  Complex coeff(int ell) const {
    if (ell < 1) throw std::domain_error("EntireSeries: coefficient index starts at 1");
    return ell <= order() ? coeffs_[static_cast<std::size_t>(ell - 1)] : Complex{};
  }
  void set_coeff(int ell, Complex v) {
    if (ell < 1 || ell > order()) throw std::domain_error("EntireSeries: coefficient index out of range");
    coeffs_[static_cast<std::size_t>(ell - 1)] = v;
  }

  // Truncated evaluation. Powers z^l/l! are accumulated incrementally so
  // no factorial can overflow regardless of the order.
  Complex operator()(Complex z) const {
    Complex sum{};
    Complex term{1.0, 0.0};  // z^l / l!, starting at l = 0
    for (int ell = 1; ell <= order(); ++ell) {
      term *= z / static_cast<double>(ell);
      sum += coeffs_[static_cast<std::size_t>(ell - 1)] * term;
    }
    return sum;
  }

  bool operator==(const EntireSeries& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

// Same storage, alternating-sign convention: the represented function is
//   k(z) = sum_{b=1}^{N} (-1)^b K_b z^b / b!.
struct SignedSeries {
  std::vector<Complex> coeffs;  // K_1 .. K_N

  SignedSeries() = default;
  explicit SignedSeries(std::vector<Complex> c) : coeffs(std::move(c)) {}
  static SignedSeries zero(int order) {
    return SignedSeries(std::vector<Complex>(static_cast<std::size_t>(std::max(order, 0))));
  }
  int order() const { return static_cast<int>(coeffs.size()); }
  Complex coeff(int b) const {
    if (b < 1) throw std::domain_error("SignedSeries: coefficient index starts at 1");
    return b <= order() ? coeffs[static_cast<std::size_t>(b - 1)] : Complex{};
  }
};

inline EntireSeries to_entire(const SignedSeries& k) {
  std::vector<Complex> e(k.coeffs.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = ((i + 1) % 2 == 0 ? 1.0 : -1.0) * k.coeffs[i];
  return EntireSeries(std::move(e));
}

inline SignedSeries to_signed(const EntireSeries& f) {
  std::vector<Complex> k(f.coeffs().size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = ((i + 1) % 2 == 0 ? 1.0 : -1.0) * f.coeffs()[i];
  return SignedSeries(std::move(k));
}

inline Complex eval(const EntireSeries& f, Complex z) { return f(z); }

// Linear combination alpha*f + beta*g, truncated at min(N_f, N_g) so the
// error budget of the shorter operand is preserved.
inline EntireSeries linear_combination(Complex alpha, const EntireSeries& f, Complex beta,
                                       const EntireSeries& g) {
  const int n = std::min(f.order(), g.order());
  EntireSeries out = EntireSeries::zero(n);
  for (int ell = 1; ell <= n; ++ell) out.set_coeff(ell, alpha * f.coeff(ell) + beta * g.coeff(ell));
  return out;
}

inline EntireSeries scale(Complex alpha, const EntireSeries& f) {
  EntireSeries out = f;
  for (int ell = 1; ell <= out.order(); ++ell) out.set_coeff(ell, alpha * out.coeff(ell));
  return out;
}

// Euler operator z d/dz: multiplies the l-th exponential coefficient by l.
inline EntireSeries delta_op(const EntireSeries& f) {
  EntireSeries out = f;
  for (int ell = 1; ell <= out.order(); ++ell)
    out.set_coeff(ell, static_cast<double>(ell) * f.coeff(ell));
  return out;
}

// Primitive int_0^z g(w)/w dw: divides the l-th coefficient by l.
// Exact inverse of delta_op on every series.
inline EntireSeries delta_antiderivative(const EntireSeries& g) {
  EntireSeries out = g;
  for (int ell = 1; ell <= out.order(); ++ell)
    out.set_coeff(ell, g.coeff(ell) / static_cast<double>(ell));
  return out;
}

// f'(z) = E_1 + sum_{l>=1} E_{l+1} z^l / l!. The value at the origin is
// returned separately so the shifted part stays in the vanishing-at-0 class.
struct SeriesDerivative {
  Complex at_zero{};
  EntireSeries h0_part;

  Complex operator()(Complex z) const { return at_zero + h0_part(z); }
};

inline SeriesDerivative derivative(const EntireSeries& f) {
  SeriesDerivative d;
  d.at_zero = f.order() >= 1 ? f.coeff(1) : Complex{};
  d.h0_part = EntireSeries::zero(f.order());
  for (int ell = 1; ell + 1 <= f.order(); ++ell) d.h0_part.set_coeff(ell, f.coeff(ell + 1));
  return d;
}

// Exponential coefficients of an analytic g recovered from samples on the
// circle |z| = radius:
//
//   g_b = b! / (M radius^b) * sum_m g(radius w^m) w^{-bm},   w = e^{2 pi i / M}.
template <class G>
std::vector<Complex> fourier_exp_coeffs(G&& g, int max_order, double radius, int samples) {
  if (max_order < 1 || samples < 2 * max_order || !(radius > 0.0))
    throw std::invalid_argument("fourier_exp_coeffs: bad sampling parameters");
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<Complex> vals(static_cast<std::size_t>(samples));
  for (int m = 0; m < samples; ++m) {
    const double phi = two_pi * m / samples;
    vals[static_cast<std::size_t>(m)] = g(radius * Complex(std::cos(phi), std::sin(phi)));
  }
  std::vector<Complex> out(static_cast<std::size_t>(max_order));
  for (int b = 1; b <= max_order; ++b) {
    Complex acc{};
    for (int m = 0; m < samples; ++m) {
      const double phi = -two_pi * b * m / samples;
      acc += vals[static_cast<std::size_t>(m)] * Complex(std::cos(phi), std::sin(phi));
    }
    out[static_cast<std::size_t>(b - 1)] =
        acc * (detail::factorial(b) / (samples * std::pow(radius, b)));
  }
  return out;
}

// Largest radius R with |E_L| R^L / L! <= tail_tol, L the last nonzero
// coefficient: a crude bound on where the truncation can still be trusted.
inline double reliable_radius(const EntireSeries& f, double tail_tol) {
  int last = 0;
  for (int ell = f.order(); ell >= 1; --ell) {
    if (f.coeff(ell) != Complex{}) {
      last = ell;
      break;
    }
  }
  if (last == 0) return std::numeric_limits<double>::infinity();
  const double mag = std::abs(f.coeff(last));
  return std::pow(tail_tol * detail::factorial(last) / mag, 1.0 / last);
}

}  // namespace hyperop
