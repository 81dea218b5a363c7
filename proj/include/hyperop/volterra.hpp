#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hyperop/matrix_system.hpp"
#include "hyperop/operator_l.hpp"
#include "hyperop/params.hpp"
#include "hyperop/quadrature.hpp"
#include "hyperop/series.hpp"

namespace hyperop {

// The real map tau(t) = t^{-nu} (1 - t) on [0, 1] (nu real, nu < 0) rises
// from 0 to its unique maximum tau_hat at t_hat = nu/(nu - 1) and falls
// back to 0 at t = 1. theta_minus and theta_plus are the two monotone
// inverses, on [0, t_hat] and [t_hat, 1].
enum class Branch { minus, plus };

namespace detail {

inline void require_real_case(const Params& p, const char* who) {
  if (!p.real_case())
    throw std::domain_error(std::string(who) +
                            ": requires real nu < 0 and real x in (0, 1); complex parameters have "
                            "no single interior maximum to split the branches at");
}

inline double tau_map(double nu, double t) { return std::pow(t, -nu) * (1.0 - t); }
inline double tau_map_deriv(double nu, double t) {
  return std::pow(t, -nu - 1.0) * (-nu + (nu - 1.0) * t);
}

}  // namespace detail

// Invert tau on the requested branch by bracketed bisection with a Newton
// polish. Near t_hat the derivative vanishes and Newton is unstable, so
// bisection runs to full width there; the tau-residual still lands far
// below 1e-13 because the map is flat at its maximum.
//
// The minus branch needs relative accuracy in t: theta_minus(tau) ~
// tau^{-1/nu} can be arbitrarily small, and the kernel divides by
// theta^{-nu}. The initial bracket comes from the exact enclosure
// tau^{-1/nu} <= theta_minus <= (tau/(1-t_hat))^{-1/nu}, which is
// multiplicatively tight, and the width stop is relative.
inline double theta(const Params& p, Branch branch, double tau) {
  detail::require_real_case(p, "theta");
  const double nu = p.nu().real();
  const double th = nu / (nu - 1.0);
  const double tauh = detail::tau_map(nu, th);
  if (!(tau >= 0.0) || tau > tauh * (1.0 + 1e-12))
    throw std::domain_error("theta: tau outside [0, tau_hat], no real solution");
  tau = std::min(tau, tauh);
  if (tau == 0.0) return branch == Branch::minus ? 0.0 : 1.0;
  if (tau == tauh) return th;

  const bool increasing = branch == Branch::minus;
  auto residual = [&](double t) { return detail::tau_map(nu, t) - tau; };

  double lo, hi;
  if (branch == Branch::minus) {
    lo = std::pow(tau, -1.0 / nu);
    hi = std::min(th, std::pow(tau / (1.0 - th), -1.0 / nu));
    if (!(hi > lo)) hi = th;
    if (residual(lo) > 0.0) return lo;  // root within rounding of the lower bound
  } else {
    lo = th;
    hi = 1.0;
  }

  // bisect to a relatively narrow bracket first
  for (int it = 0; it < 200 && hi - lo > 1e-3 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool below = residual(mid) < 0.0;
    (below == increasing ? lo : hi) = mid;
  }
  // Newton polish, safeguarded by the bracket
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = residual(t);
    const double d = detail::tau_map_deriv(nu, t);
    double next = std::abs(d) > 0.0 ? t - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool below = r < 0.0;
    (below == increasing ? lo : hi) = t;
    if (hi - lo <= 4e-16 * hi) return 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

// Per-branch view of theta as in the branch-inverse pairing.
struct BranchInverse {
  Params params;
  Branch branch;
  double solver_tolerance = 1e-13;

  double operator()(double tau) const { return theta(params, branch, tau); }
  double t_hat() const { return params.nu().real() / (params.nu().real() - 1.0); }
  double tau_hat() const { return detail::tau_map(params.nu().real(), t_hat()); }
};

// Psi_{+/-}(z, tau) = e^{-z theta^{-nu} (1 - (1-x) theta)}
//                     / ( theta^{-nu} (-nu + (nu - 1) theta) ),  theta = theta_{+/-}(tau).
// Singular at tau = tau_hat on both branches and at tau = 0 on the minus
// branch (where it behaves like -1/(nu tau)).
inline Complex kernel_psi(const Params& p, Branch branch, Complex z, double tau) {
  detail::require_real_case(p, "kernel_psi");
  const double nu = p.nu().real();
  const double x = p.x().real();
  const double tauh = detail::tau_map(nu, nu / (nu - 1.0));
  // relative collar: anything within 1e-12 of the fold counts as singular
  if (tau >= tauh * (1.0 - 1e-12)) throw std::domain_error("kernel_psi: singular at tau = tau_hat");
  if (branch == Branch::minus && tau <= 0.0)
    throw std::domain_error("kernel_psi: minus branch singular at tau = 0");
  if (tau < 0.0) throw std::domain_error("kernel_psi: tau must be non-negative");

  const double t = theta(p, branch, tau);
  const double tmnu = std::pow(t, -nu);
  const double denom = tmnu * (-nu + (nu - 1.0) * t);
  if (denom == 0.0) throw std::domain_error("kernel_psi: vanishing denominator");
  return std::exp(-z * tmnu * (1.0 - (1.0 - x) * t)) / denom;
}

// Volterra form of the operator M, integrated in the real variable tau:
//
//   M f(z) = int_0^{tau_hat} [Psi_-(z, tau) - Psi_+(z, tau)] f(z tau) dtau.
//
// The (tau_hat - tau)^{-1/2} endpoint is absorbed exactly by the
// substitution tau = tau_hat (1 - u^2); the tau = 0 end is harmless since
// f(z tau) vanishes linearly against the 1/(nu tau) growth of Psi_-.
inline OperatorResult apply_m_volterra(const Params& p, const EntireSeries& f, Complex z,
                                       const QuadratureSpec& spec) {
  detail::require_real_case(p, "apply_m_volterra");
  const double nu = p.nu().real();
  const double tauh = detail::tau_map(nu, nu / (nu - 1.0));
  auto integrand = [&](double u) -> Complex {
    // The kernel-times-u product has a finite limit as u -> 0, but
    // tau = tauh (1 - u^2) enters the kernel's singular collar once u^2
    // drops to ~1e-12. Freezing u below 1e-5 keeps tau clear of it; the
    // induced error is |G'| u_floor over a width u_floor, around 1e-13 of
    // the integral, far below the quadrature tolerances.
    const double uc = std::max(u, 1e-5);
    const double tau = tauh * (1.0 - uc * uc);
    if (!(tau > 0.0) || tau >= tauh) return {};
    const Complex kernel =
        kernel_psi(p, Branch::minus, z, tau) - kernel_psi(p, Branch::plus, z, tau);
    return kernel * f(z * tau) * (2.0 * tauh * uc);
  };
  const QuadratureResult q = integrate(integrand, 0.0, 1.0, spec);
  return {q.value, q.error_estimate, q.panels, q.evals};
}

// Full consistency pass over the factorized chain: push E through the
// triangular system to get its operator image K, scale the delta-primitive
// into K_1 with (1-x)/(nu (1-nu) x), and measure
// max_z | M_volterra E (z) - K_1(z) |.
inline double solve_volterra_check(const Params& p, const EntireSeries& e_star,
                                   const QuadratureSpec& spec,
                                   const std::vector<Complex>& z_samples) {
  detail::require_real_case(p, "solve_volterra_check");
  const int order = std::max(e_star.order() + 22, 30);
  const SignedSeries k = forward_system(p, e_star, order);
  const Complex scale_k1 = (1.0 - p.x()) / (p.nu() * (1.0 - p.nu()) * p.x());
  const EntireSeries k1 = scale(scale_k1, delta_antiderivative(to_entire(k)));
  double worst = 0.0;
  for (const Complex& z : z_samples) {
    const Complex lhs = apply_m_volterra(p, e_star, z, spec).value;
    worst = std::max(worst, std::abs(lhs - k1(z)));
  }
  return worst;
}

// Least-squares slope of log|Psi(z, tau)| against log(tau_hat - tau),
// sampled on 1 - tau/tau_hat in [10^{-e_hi}, 10^{-e_lo}]; the kernel's
// endpoint singularity order. The default window sits deep enough that the
// subleading sqrt(tau_hat - tau) correction no longer biases the fit.
inline double kernel_singularity_slope(const Params& p, Branch branch, Complex z,
                                       double e_lo = 4.0, double e_hi = 6.0, int points = 48) {
  detail::require_real_case(p, "kernel_singularity_slope");
  const double nu = p.nu().real();
  const double tauh = detail::tau_map(nu, nu / (nu - 1.0));
  std::vector<double> xs, ys;
  xs.reserve(points);
  ys.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double e = e_lo + (e_hi - e_lo) * i / (points - 1.0);
    const double tau = tauh * (1.0 - std::pow(10.0, -e));
    xs.push_back(std::log(tauh - tau));
    ys.push_back(std::log(std::abs(kernel_psi(p, branch, z, tau))));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    sx += xs[static_cast<std::size_t>(i)];
    sy += ys[static_cast<std::size_t>(i)];
    sxx += xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)];
    sxy += xs[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)];
  }
  const double n = static_cast<double>(points);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hyperop
