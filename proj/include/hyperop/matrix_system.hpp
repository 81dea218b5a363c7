#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hyperop/compensated.hpp"
#include "hyperop/params.hpp"
#include "hyperop/series.hpp"
#include "hyperop/special.hpp"
#include "hyperop/trimatrix.hpp"

namespace hyperop {

// Binomial coefficient by multiplicative recurrence; exact in double
// precision up to n = 56, far beyond the desk-scale orders used here.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

namespace detail {
inline double alt_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }
}  // namespace detail

// A_{n,k} = (-1)^k C(n,k) F(k-n, -n nu; -n; x). Diagonal entries are (-1)^n.
inline TriMatrix build_a(const Params& p, int n) {
  TriMatrix m(n);
  for (int b = 1; b <= n; ++b) {
    const Complex bn = -static_cast<double>(b) * p.nu();
    for (int ell = 1; ell <= b; ++ell)
      m(b, ell) = detail::alt_sign(ell) * binomial(b, ell) *
                  gauss_f_poly(b - ell, bn, Complex(-static_cast<double>(b)), p.x());
  }
  return m;
}

// B_{n,k} = (-1)^k C(n,k) F(k-n, k nu; k; x); the inverse of A on sequences.
inline TriMatrix build_b(const Params& p, int n) {
  TriMatrix m(n);
  for (int b = 1; b <= n; ++b)
    for (int ell = 1; ell <= b; ++ell)
      m(b, ell) = detail::alt_sign(ell) * binomial(b, ell) *
                  gauss_f_poly(b - ell, static_cast<double>(ell) * p.nu(),
                               Complex(static_cast<double>(ell)), p.x());
  return m;
}

// Q_{b,l} = Gamma(b) Gamma(1 - b nu) / Gamma(b - b nu) * x/(x-1)
//           * F(l-b, -b nu; -b; x).
// The Gamma prefactor always goes through log_gamma sums so it stays
// finite when b|nu| is large. Diagonal entries are nonzero.
inline TriMatrix build_q(const Params& p, int n) {
  TriMatrix m(n);
  const Complex xr = p.x() / (p.x() - 1.0);
  for (int b = 1; b <= n; ++b) {
    const double bd = static_cast<double>(b);
    const Complex bn = bd * p.nu();
    const Complex pref =
        gamma_ratio({Complex(bd), 1.0 - bn}, {Complex(bd) - bn}) * xr;
    for (int ell = 1; ell <= b; ++ell)
      m(b, ell) = pref * gauss_f_poly(b - ell, -bn, Complex(-bd), p.x());
  }
  return m;
}

// Forward application of the reduced triangular system:
//   K_b = sum_{l=1}^{min(b,N)} (-1)^l C(b,l) Q_{b,l} E_l,   b = 1..order.
// These are the signed-series coefficients of the operator image of E.
inline SignedSeries forward_system(const Params& p, const EntireSeries& e, int order) {
  const TriMatrix q = build_q(p, order);
  SignedSeries k = SignedSeries::zero(order);
  for (int b = 1; b <= order; ++b) {
    detail::CompensatedSum acc;
    const int top = std::min(b, e.order());
    for (int ell = 1; ell <= top; ++ell)
      acc.add(detail::alt_sign(ell) * binomial(b, ell) * q(b, ell) * e.coeff(ell));
    k.coeffs[static_cast<std::size_t>(b - 1)] = acc.value();
  }
  return k;
}

inline SignedSeries forward_system(const Params& p, const EntireSeries& e) {
  return forward_system(p, e, e.order());
}

// Explicit solution of the triangular system, entry by entry:
//   E_b = (x-1)/x sum_{l=1}^b (-1)^l C(b,l) F(l-b, l nu; l; x)
//         * Gamma(l - l nu) / (Gamma(l) Gamma(1 - l nu)) * K_l.
// Intentionally not routed through build_b so it can be cross-checked
// against the two-step composition B * K~.
inline EntireSeries solve_system(const Params& p, const SignedSeries& k) {
  if (!p.operator_certified())
    throw std::domain_error("solve_system: requires Re(nu) < 0");
  const int n = k.order();
  const Complex xf = (p.x() - 1.0) / p.x();
  // per-l factors shared by every row
  std::vector<Complex> weighted(static_cast<std::size_t>(n));
  for (int ell = 1; ell <= n; ++ell) {
    const double ld = static_cast<double>(ell);
    const Complex ln = ld * p.nu();
    weighted[static_cast<std::size_t>(ell - 1)] =
        gamma_ratio({Complex(ld) - ln}, {Complex(ld), 1.0 - ln}) * k.coeff(ell);
  }
  EntireSeries e = EntireSeries::zero(n);
  for (int b = 1; b <= n; ++b) {
    detail::CompensatedSum acc;
    for (int ell = 1; ell <= b; ++ell)
      acc.add(detail::alt_sign(ell) * binomial(b, ell) *
              gauss_f_poly(b - ell, static_cast<double>(ell) * p.nu(),
                           Complex(static_cast<double>(ell)), p.x()) *
              weighted[static_cast<std::size_t>(ell - 1)]);
    e.set_coeff(b, xf * acc.value());
  }
  return e;
}

// Reduced right-hand side K~_b = Gamma(b - b nu)/(Gamma(b) Gamma(1 - b nu))
// * (x-1)/x * K_b, the scaling that turns the Q system into the A system.
inline std::vector<Complex> reduce_rhs(const Params& p, const SignedSeries& k) {
  const int n = k.order();
  std::vector<Complex> kt(static_cast<std::size_t>(n));
  const Complex xf = (p.x() - 1.0) / p.x();
  for (int b = 1; b <= n; ++b) {
    const double bd = static_cast<double>(b);
    const Complex bn = bd * p.nu();
    kt[static_cast<std::size_t>(b - 1)] =
        gamma_ratio({Complex(bd) - bn}, {Complex(bd), 1.0 - bn}) * xf * k.coeff(b);
  }
  return kt;
}

// Exponential generating function identity: with S = B(x,nu) T,
//
//   sum_n S_n z^n/n! = e^z sum_k (-1)^k T_k z^k/k! Phi(k nu; k; -x z).
//
// Evaluates the right-hand side.
inline Complex egf_identity_eval(const Params& p, const SignedSeries& t_seq, Complex z) {
  Complex acc{};
  Complex zk{1.0, 0.0};  // z^k / k!
  for (int k = 1; k <= t_seq.order(); ++k) {
    const double kd = static_cast<double>(k);
    zk *= z / kd;
    acc += detail::alt_sign(k) * t_seq.coeff(k) * zk *
           confluent_phi_series(kd * p.nu(), Complex(kd), -p.x() * z);
  }
  return std::exp(z) * acc;
}

}  // namespace hyperop
