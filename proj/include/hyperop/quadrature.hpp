#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hyperop/errors.hpp"

namespace hyperop {

using Complex = std::complex<double>;

enum class QuadRule { gauss_legendre_adaptive, tanh_sinh };
enum class EndpointPolicy { open_interval, closed };

struct QuadratureSpec {
  QuadRule rule = QuadRule::tanh_sinh;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = 4000;
  EndpointPolicy endpoint_policy = EndpointPolicy::open_interval;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_panels < 4) throw std::invalid_argument("QuadratureSpec: max_panels must be >= 4");
  }

  QuadratureSpec with_tols(double at, double rt) const {
    QuadratureSpec s = *this;
    s.abs_tol = at;
    s.rel_tol = rt;
    return s;
  }
};

struct QuadratureResult {
  Complex value{};
  double error_estimate = 0.0;
  // panels: 15-point rule applications (adaptive Gauss-Legendre) or
  // refinement levels (tanh-sinh); evals: integrand evaluations.
  int panels = 0;
  int evals = 0;
};

namespace detail {

// Deterministic pairwise reduction; results are bit-stable for a given
// set of contributions regardless of how they were produced.
inline Complex pairwise_sum(const Complex* v, std::size_t n) {
  if (n == 0) return {};
  if (n <= 8) {
    Complex s = v[0];
    for (std::size_t i = 1; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline Complex pairwise_sum(const std::vector<Complex>& v) { return pairwise_sum(v.data(), v.size()); }

// 15-point Gauss-Legendre nodes/weights on [-1, 1], generated once by
// Newton iteration on P_15.
inline const std::array<std::pair<double, double>, 15>& gl15_rule() {
  static const std::array<std::pair<double, double>, 15> table = [] {
    constexpr int n = 15;
    constexpr double pi = 3.141592653589793238462643383279502884;
    std::array<std::pair<double, double>, 15> nw{};
    for (int i = 0; i < n; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 1.0;
      for (int iter = 0; iter < 64; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 4 * std::numeric_limits<double>::epsilon()) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      nw[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return nw;
  }();
  return table;
}

template <class F>
Complex gl15_panel(F& f, double a, double b, int& evals) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::array<Complex, 15> terms;
  std::size_t i = 0;
  for (const auto& [x, w] : gl15_rule()) terms[i++] = w * f(mid + half * x);
  evals += 15;
  return half * pairwise_sum(terms.data(), terms.size());
}

template <class F>
QuadratureResult integrate_gl_adaptive(F& f, double a, double b, const QuadratureSpec& spec) {
  struct Seg {
    double a, b;
    Complex estimate;
    int depth;
  };
  QuadratureResult out;
  const Complex whole = gl15_panel(f, a, b, out.evals);
  out.panels = 1;
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
  const double width_total = b - a;

  std::vector<Seg> stack{{a, b, whole, 0}};
  std::vector<Complex> accepted;
  double err_total = 0.0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const Complex left = gl15_panel(f, s.a, m, out.evals);
    const Complex right = gl15_panel(f, m, s.b, out.evals);
    out.panels += 2;
    if (out.panels > spec.max_panels)
      throw quadrature_error("adaptive Gauss-Legendre: panel budget exhausted");
    const double err = std::abs(s.estimate - (left + right));
    if (err <= 0.5 * tol * ((s.b - s.a) / width_total) || s.depth >= 48) {
      accepted.push_back(left);
      accepted.push_back(right);
      err_total += err;
    } else {
      stack.push_back({s.a, m, left, s.depth + 1});
      stack.push_back({m, s.b, right, s.depth + 1});
    }
  }
  out.value = pairwise_sum(accepted);
  out.error_estimate = err_total;
  return out;
}

// tanh-sinh (double-exponential) rule with level doubling. Abscissae that
// round onto an endpoint are skipped, so the integrand is never evaluated
// at the interval ends; their weights are far below double precision.
template <class F>
QuadratureResult integrate_tanh_sinh(F& f, double a, double b, const QuadratureSpec& spec) {
  constexpr double pi_half = 1.570796326794896619231321691639751442;
  // large enough that the endpoint-offset underflow guard, not this cap,
  // truncates the transformed axis: integrable singularities x^alpha keep
  // contributing until e^{-(1+alpha) w} underflows
  constexpr double u_max = 6.5;
  constexpr int max_levels = 11;

  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const long eval_budget = 15L * spec.max_panels;

  QuadratureResult out;
  std::vector<Complex> terms;
  terms.reserve(512);

  auto push_node = [&](double u) {
    const double w = pi_half * std::sinh(u);
    const double cw = std::cosh(w);
    const double weight = half * pi_half * std::cosh(u) / (cw * cw);
    if (u == 0.0) {
      terms.push_back(weight * f(mid));
      out.evals += 1;
      return;
    }
    const double delta = half * std::exp(-w) / cw;  // distance to the nearer endpoint
    if (!(delta > 0.0)) return;
    // the two mirrored nodes round onto their endpoints at different
    // offsets; drop each side only once it does
    const double xm = a + delta;
    if (xm > a) {
      terms.push_back(weight * f(xm));
      out.evals += 1;
    }
    const double xp = b - delta;
    if (xp < b) {
      terms.push_back(weight * f(xp));
      out.evals += 1;
    }
  };

  Complex prev{};
  double h = 1.0;
  for (int level = 0; level <= max_levels; ++level) {
    if (level == 0) {
      for (int k = 0; k * h <= u_max; ++k) push_node(k * h);
    } else {
      h *= 0.5;
      for (int k = 1; k * h <= u_max; k += 2) push_node(k * h);
    }
    const Complex val = h * pairwise_sum(terms);
    out.panels = level + 1;
    if (level >= 2) {
      const double err = std::abs(val - prev);
      out.error_estimate = err;
      if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(val))) {
        out.value = val;
        return out;
      }
    }
    prev = val;
    if (out.evals > eval_budget) throw quadrature_error("tanh-sinh: evaluation budget exhausted");
  }
  throw quadrature_error("tanh-sinh: tolerance not reached within the level cap");
}

}  // namespace detail

// Integrate a complex-valued function of a real variable over [a, b].
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {};
  if (!(a < b)) throw std::invalid_argument("integrate: requires a <= b");
  auto& fn = f;
  return spec.rule == QuadRule::tanh_sinh ? detail::integrate_tanh_sinh(fn, a, b, spec)
                                          : detail::integrate_gl_adaptive(fn, a, b, spec);
}

}  // namespace hyperop
