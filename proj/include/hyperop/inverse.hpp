#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "hyperop/contour.hpp"
#include "hyperop/matrix_system.hpp"
#include "hyperop/params.hpp"
#include "hyperop/quadrature.hpp"
#include "hyperop/series.hpp"

namespace hyperop {

// K may be supplied as a truncated series or as an opaque evaluator of a
// function vanishing at 0.
using H0Function = std::function<Complex(Complex)>;

struct ContourDiagnostics {
  double winding_factor_arg_change = 0.0;  // (-t) on loop0, (t-1) on loop1: full turn, +2 pi
  double passive_factor_arg_change = 0.0;  // (1-t) on loop0, t on loop1: no full turn
  double max_arg_mag = 0.0;                // largest |K argument| met along the path
  double series_reliable_radius = std::numeric_limits<double>::infinity();
  bool series_radius_ok = true;
  double error_estimate = 0.0;
  int panels = 0;
  int evals = 0;
};

namespace detail {

inline void record_quad(ContourDiagnostics* diag, const QuadratureResult& q) {
  if (!diag) return;
  diag->error_estimate = q.error_estimate;
  diag->panels = q.panels;
  diag->evals = q.evals;
}

}  // namespace detail

// Inverse of the operator by the loop representation around the origin:
//
//   E(z) = (1-x)/(2 i pi x) e^z oint_{1}^{(0+)} e^{-x t z} / (t (t-1))
//            K( z (-t)^nu (1-t)^{1-nu} ) dt,
//
// contour from t = 1 encircling 0 positively. Valid for Re(nu) < 1;
// operator round trips are certified for Re(nu) < 0 only.
inline Complex invert_l_loop0(const Params& p, const H0Function& k, Complex z, double c0,
                              const QuadratureSpec& spec, ContourDiagnostics* diag = nullptr) {
  const Complex x = p.x(), nu = p.nu();
  const ContourPath path = make_loop_contour(c0);
  const double eps = 1e-9;
  BranchTracker trk_neg([&](double s) { return -path.point(s); }, eps, 1.0 - eps);
  BranchTracker trk_om([&](double s) { return 1.0 - path.point(s); }, eps, 1.0 - eps);
  if (diag) {
    diag->winding_factor_arg_change = trk_neg.total_change();
    diag->passive_factor_arg_change = trk_om.total_change();
  }

  double max_w = 0.0;
  auto integrand = [&](double s) -> Complex {
    const ContourPath::ReparamNode node = path.reparam_node(s);
    const Complex t = node.t;
    const Complex neg = -t;
    const Complex om = 1.0 - t;
    if (om == Complex{}) return {};
    const Complex w = z * pow_tracked(neg, trk_neg.continuous_arg(node.sigma, neg), nu) *
                      pow_tracked(om, trk_om.continuous_arg(node.sigma, om), 1.0 - nu);
    max_w = std::max(max_w, std::abs(w));
    return std::exp(-x * t * z) * k(w) / (t * (t - 1.0)) * node.dt_ds;
  };
  const QuadratureResult q = integrate(integrand, 0.0, 1.0, spec);
  detail::record_quad(diag, q);
  if (diag) diag->max_arg_mag = max_w;
  return (1.0 - x) / (Complex(0.0, detail::kTwoPi) * x) * std::exp(z) * q.value;
}

// Sibling representation after t -> 1 - t: loop from t = 0 encircling 1,
//
//   E(z) = (1-x)/(2 i pi x) e^{(1-x) z} oint_{0}^{(1+)} e^{x t z} / (t (1-t))
//            K( z t^{1-nu} (t-1)^nu ) dt.
inline Complex invert_l_loop1(const Params& p, const H0Function& k, Complex z, double c0,
                              const QuadratureSpec& spec, ContourDiagnostics* diag = nullptr) {
  if (!p.operator_certified()) throw std::domain_error("invert_l_loop1: requires Re(nu) < 0");
  const Complex x = p.x(), nu = p.nu();
  const ContourPath path = make_loop1_contour(c0);
  const double eps = 1e-9;
  BranchTracker trk_tm1([&](double s) { return path.point(s) - 1.0; }, eps, 1.0 - eps);
  BranchTracker trk_t([&](double s) { return path.point(s); }, eps, 1.0 - eps);
  if (diag) {
    diag->winding_factor_arg_change = trk_tm1.total_change();
    diag->passive_factor_arg_change = trk_t.total_change();
  }

  double max_w = 0.0;
  auto integrand = [&](double s) -> Complex {
    const ContourPath::ReparamNode node = path.reparam_node(s);
    const Complex t = node.t;
    if (t == Complex{}) return {};
    const Complex tm1 = t - 1.0;
    const Complex w = z * pow_tracked(t, trk_t.continuous_arg(node.sigma, t), 1.0 - nu) *
                      pow_tracked(tm1, trk_tm1.continuous_arg(node.sigma, tm1), nu);
    max_w = std::max(max_w, std::abs(w));
    return std::exp(x * t * z) * k(w) / (t * (1.0 - t)) * node.dt_ds;
  };
  const QuadratureResult q = integrate(integrand, 0.0, 1.0, spec);
  detail::record_quad(diag, q);
  if (diag) diag->max_arg_mag = max_w;
  return (1.0 - x) / (Complex(0.0, detail::kTwoPi) * x) * std::exp((1.0 - x) * z) * q.value;
}

// Vertical-line representation on Re(r) = c0, 0 < c0 < 1:
//
//   E(z) = -(1-x)/(2 i pi x) e^{(1-x) z} int_{c0 - i inf}^{c0 + i inf}
//            e^{x z / r} / (1 - r) K( z (1-r)^nu / r ) dr.
//
// The sign comes from the orientation: the homography t -> t/(1-t) carries
// the positively-oriented loop around the origin onto the line traversed
// downward, and dt/(t(t-1)) = -dr'/r'; restoring the upward orientation
// used here leaves the overall minus in place.
//
// 1 - r keeps a positive real part on the line, so the power stays on the
// principal branch. The infinite line is truncated where the integrand
// bound C |y|^{Re nu - 1} contributes less than a tenth of abs_tol, with C
// estimated from K near the origin, then compressed by y = sinh(v).
inline Complex invert_l_line(const Params& p, const H0Function& k, Complex z, double c0,
                             const QuadratureSpec& spec, ContourDiagnostics* diag = nullptr) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw std::domain_error("invert_l_line: c0 must lie in (0, 1)");
  if (!p.operator_certified())
    throw std::domain_error("invert_l_line: tail truncation requires Re(nu) < 0");
  const Complex x = p.x(), nu = p.nu();
  if (z == Complex{}) return {};

  // first-coefficient estimate |K'(0)| from a small probe
  const double probe = 1e-3;
  const double k1_mag = std::max(std::abs(k(Complex(probe)) / probe), 1e-6);
  const double renu = nu.real();
  const double big_c = std::exp(std::abs(x * z) / c0) * k1_mag * std::abs(z);
  const double tail_target = 0.1 * spec.abs_tol * (1.0 - renu);
  double t_cut = std::pow(big_c / tail_target, 1.0 / (1.0 - renu));
  t_cut = std::clamp(t_cut, 25.0, 1e12);
  const double v_max = std::asinh(t_cut);

  double max_w = 0.0;
  auto integrand = [&](double v) -> Complex {
    const double y = std::sinh(v);
    const Complex r(c0, y);
    const Complex om = 1.0 - r;
    const Complex w = z * std::pow(om, nu) / r;
    max_w = std::max(max_w, std::abs(w));
    return std::exp(x * z / r) / om * k(w) * Complex(0.0, std::cosh(v));
  };
  const QuadratureResult q = integrate(integrand, -v_max, v_max, spec);
  detail::record_quad(diag, q);
  if (diag) diag->max_arg_mag = max_w;
  return -(1.0 - x) / (Complex(0.0, detail::kTwoPi) * x) * std::exp((1.0 - x) * z) * q.value;
}

namespace detail {

inline H0Function series_evaluator(const EntireSeries& k) {
  return [k](Complex w) { return k(w); };
}

inline void series_radius_diag(const EntireSeries& k, const QuadratureSpec& spec,
                               ContourDiagnostics* diag) {
  if (!diag) return;
  diag->series_reliable_radius = reliable_radius(k, 0.1 * spec.abs_tol);
}

inline void series_radius_verdict(ContourDiagnostics* diag) {
  if (!diag) return;
  diag->series_radius_ok = diag->max_arg_mag <= diag->series_reliable_radius;
}

}  // namespace detail

// Series overloads: the contour argument magnitude met along the path is
// compared against the truncation's reliable radius and reported through
// the diagnostics.
inline Complex invert_l_loop0(const Params& p, const EntireSeries& k, Complex z, double c0,
                              const QuadratureSpec& spec, ContourDiagnostics* diag = nullptr) {
  detail::series_radius_diag(k, spec, diag);
  const Complex v = invert_l_loop0(p, detail::series_evaluator(k), z, c0, spec, diag);
  detail::series_radius_verdict(diag);
  return v;
}

inline Complex invert_l_loop1(const Params& p, const EntireSeries& k, Complex z, double c0,
                              const QuadratureSpec& spec, ContourDiagnostics* diag = nullptr) {
  detail::series_radius_diag(k, spec, diag);
  const Complex v = invert_l_loop1(p, detail::series_evaluator(k), z, c0, spec, diag);
  detail::series_radius_verdict(diag);
  return v;
}

inline Complex invert_l_line(const Params& p, const EntireSeries& k, Complex z, double c0,
                             const QuadratureSpec& spec, ContourDiagnostics* diag = nullptr) {
  detail::series_radius_diag(k, spec, diag);
  const Complex v = invert_l_line(p, detail::series_evaluator(k), z, c0, spec, diag);
  detail::series_radius_verdict(diag);
  return v;
}

// Coefficient-space route through the explicit triangular solution; shares
// the inversion interface with the contour representations. The input is
// padded (or cut) to the requested output order.
inline EntireSeries invert_l_series(const Params& p, const SignedSeries& k, int n) {
  if (n < 1) throw std::invalid_argument("invert_l_series: output order must be positive");
  SignedSeries padded = SignedSeries::zero(n);
  for (int b = 1; b <= std::min(n, k.order()); ++b)
    padded.coeffs[static_cast<std::size_t>(b - 1)] = k.coeff(b);
  return solve_system(p, padded);
}

enum class InverseRoute { series, loop0, loop1, line };

// M^{-1} g(z) = (x nu (1-nu)/(1-x)) * L^{-1}(z g')(z); the coefficient list
// of z g' is exactly delta_op(g).
inline Complex invert_m(const Params& p, const EntireSeries& g, Complex z, InverseRoute route,
                        double c0, const QuadratureSpec& spec) {
  if (!p.operator_certified()) throw std::domain_error("invert_m: requires Re(nu) < 0");
  const EntireSeries zgp = delta_op(g);
  const Complex kappa = p.x() * p.nu() * (1.0 - p.nu()) / (1.0 - p.x());
  switch (route) {
    case InverseRoute::series: {
      const int n_out = std::max(g.order() + 20, 24);
      const EntireSeries e = invert_l_series(p, to_signed(zgp), n_out);
      return kappa * e(z);
    }
    case InverseRoute::loop0:
      return kappa * invert_l_loop0(p, zgp, z, c0, spec);
    case InverseRoute::loop1:
      return kappa * invert_l_loop1(p, zgp, z, c0, spec);
    case InverseRoute::line:
      return kappa * invert_l_line(p, zgp, z, c0, spec);
  }
  return {};
}

}  // namespace hyperop
