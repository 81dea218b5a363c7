#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hyperop/params.hpp"
#include "hyperop/quadrature.hpp"
#include "hyperop/series.hpp"

namespace hyperop {

// R(zeta) = x (1 - zeta)^{-nu} (1 - (1-x) zeta)^{nu - 1} on [0, 1].
// Both base factors avoid the negative real axis for admissible x and
// zeta in [0, 1), so principal powers apply. R(0) = x; R(1) = 0 when
// Re(nu) < 0.
inline Complex r_eval(const Params& p, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("r_eval: zeta must lie in [0, 1]");
  if (zeta == 0.0) return p.x();
  if (zeta == 1.0) {
    if (p.nu().real() < 0.0) return {};
    throw std::domain_error("r_eval: endpoint zeta = 1 requires Re(nu) < 0");
  }
  return p.x() * std::pow(Complex(1.0 - zeta), -p.nu()) *
         std::pow(1.0 - (1.0 - p.x()) * zeta, p.nu() - 1.0);
}

// The kernel function R as a callable, for use as a plain integrand factor.
struct RFunction {
  Params params;
  Complex operator()(double zeta) const { return r_eval(params, zeta); }
};

struct OperatorResult {
  Complex value{};
  double error_estimate = 0.0;
  int panels = 0;
  int evals = 0;
};

namespace detail {
inline OperatorResult as_operator_result(const QuadratureResult& q) {
  return {q.value, q.error_estimate, q.panels, q.evals};
}
}  // namespace detail

// L f(z) = int_0^1 [ (1 + z R(zeta)) f(zeta R(zeta) z)
//                    - c z R(zeta) f'(zeta R(zeta) z) ] e^{-R(zeta) z} dzeta,
// c = (1 - nu x)/(1 - x). Maps the vanishing-at-0 class to itself for
// Re(nu) < 0; L f(0) = 0 exactly since the integrand is pointwise zero.
inline OperatorResult apply_l(const Params& p, const EntireSeries& f, Complex z,
                              const QuadratureSpec& spec) {
  if (!p.operator_certified()) throw std::domain_error("apply_l: requires Re(nu) < 0");
  const SeriesDerivative fd = derivative(f);
  const Complex c = p.c();
  auto integrand = [&](double zeta) -> Complex {
    const Complex r = r_eval(p, zeta);
    const Complex arg = zeta * r * z;
    return ((1.0 + z * r) * f(arg) - c * z * r * fd(arg)) * std::exp(-r * z);
  };
  return detail::as_operator_result(integrate(integrand, 0.0, 1.0, spec));
}

// M f(z) = int_0^1 e^{-z t^{-nu} (1 - (1-x) t)} f(z t^{-nu} (1 - t)) dt/t.
// Near t = 0 the integrand behaves like t^{-Re(nu)-1} |z E_1|, integrable
// for Re(nu) < 0; the open-interval endpoint policy is required.
inline OperatorResult apply_m(const Params& p, const EntireSeries& f, Complex z,
                              const QuadratureSpec& spec) {
  if (!p.operator_certified()) throw std::domain_error("apply_m: requires Re(nu) < 0");
  if (spec.endpoint_policy != EndpointPolicy::open_interval)
    throw std::invalid_argument("apply_m: open-interval endpoint policy required");
  const Complex x = p.x(), nu = p.nu();
  auto integrand = [&](double t) -> Complex {
    const Complex tm = std::pow(Complex(t), -nu);
    return std::exp(-z * tm * (1.0 - (1.0 - x) * t)) * f(z * tm * (1.0 - t)) / t;
  };
  return detail::as_operator_result(integrate(integrand, 0.0, 1.0, spec));
}

// Residual of the factorization L = (x nu (1-nu)/(1-x)) * delta o M over the
// given z samples, with the z-derivative of M f taken by central differences
// (the integrand is analytic in z, so real-step differencing is sound).
inline double factorization_check(const Params& p, const EntireSeries& f,
                                  const std::vector<Complex>& z_samples,
                                  const QuadratureSpec& spec) {
  const Complex kappa = p.x() * p.nu() * (1.0 - p.nu()) / (1.0 - p.x());
  double worst = 0.0;
  for (const Complex& z : z_samples) {
    const Complex lhs = apply_l(p, f, z, spec).value;
    const double h = 1e-5 * std::max(1.0, std::abs(z));
    const Complex mp = apply_m(p, f, z + h, spec).value;
    const Complex mm = apply_m(p, f, z - h, spec).value;
    const Complex delta_m = z * (mp - mm) / (2.0 * h);
    worst = std::max(worst, std::abs(lhs - kappa * delta_m));
  }
  return worst;
}

// Bound |zeta R(zeta) z| over the integration range by dense sampling.
inline double max_scaled_arg(const Params& p, double z_mag) {
  double worst = 0.0;
  const int n = 256;
  for (int i = 0; i <= n; ++i) {
    const double zeta = static_cast<double>(i) / n;
    worst = std::max(worst, zeta * std::abs(r_eval(p, zeta)) * z_mag);
  }
  return worst;
}

// Crude truncation budget: last-term bound |E_N| (max|arg|)^N / N!. Callers
// should keep this below 0.1 * abs_tol; choose_order_flag reports whether a
// series meets that, it does not attempt to fix a slow-decaying input.
inline double truncation_tail_bound(const EntireSeries& f, double max_arg_mag) {
  const int n = f.order();
  if (n < 1) return 0.0;
  return std::abs(f.coeff(n)) * std::pow(max_arg_mag, n) / detail::factorial(n);
}

inline bool truncation_order_ok(const Params& p, const EntireSeries& f, double z_mag,
                                double abs_tol) {
  return truncation_tail_bound(f, max_scaled_arg(p, z_mag)) < 0.1 * abs_tol;
}

}  // namespace hyperop
