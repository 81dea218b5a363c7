#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "hyperop/errors.hpp"

namespace hyperop {

using Complex = std::complex<double>;

namespace detail {
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;

// Wrap into (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double pi = 3.141592653589793238462643383279502884;
  a = std::fmod(a, kTwoPi);
  if (a <= -pi) a += kTwoPi;
  if (a > pi) a -= kTwoPi;
  return a;
}
}  // namespace detail

enum class ContourKind { loop_around_0_from_1, loop_around_1_from_0, vertical_line };

// Branch-aware parametrized path. The loop kinds are the circle family
//   t(s) = (1 - 1/(2 c0)) + (1/(2 c0)) e^{2 pi i s - i pi sigma},
// positively oriented, with the phase sigma in {0, 1} chosen so the start
// point is t = 1 (loop around 0) or t = 0 (loop around 1, the image of the
// first family under t -> 1 - t). The vertical line Re t = c0 is
// compactified onto s in (0, 1) through a tangent map.
class ContourPath {
 public:
  ContourPath(ContourKind kind, double c0) : kind_(kind), c0_(c0) {
    if (!(c0 > 0.0 && c0 < 1.0)) throw std::domain_error("ContourPath: c0 must lie in (0, 1)");
  }

  ContourKind kind() const { return kind_; }
  double c0() const { return c0_; }
  double radius() const { return 0.5 / c0_; }

  Complex point(double s) const {
    const double rho = radius();
    switch (kind_) {
      case ContourKind::loop_around_0_from_1:
        return (1.0 - rho) + rho * phase(s);
      case ContourKind::loop_around_1_from_0:
        return rho - rho * phase(s);  // sigma = 1 flips the phase
      case ContourKind::vertical_line: {
        constexpr double pi = 3.141592653589793238462643383279502884;
        return Complex(c0_, std::tan(pi * (s - 0.5)));
      }
    }
    return {};
  }

  Complex velocity(double s) const {
    const double rho = radius();
    const Complex rot = Complex(0.0, detail::kTwoPi) * phase(s);
    switch (kind_) {
      case ContourKind::loop_around_0_from_1:
        return rho * rot;
      case ContourKind::loop_around_1_from_0:
        return -rho * rot;
      case ContourKind::vertical_line: {
        constexpr double pi = 3.141592653589793238462643383279502884;
        const double c = std::cos(pi * (s - 0.5));
        return Complex(0.0, pi / (c * c));
      }
    }
    return {};
  }

  // Discrete winding number of the path about a point, by summing wrapped
  // argument increments over a uniform closed grid.
  double winding_number(Complex about, int nodes = 256) const {
    double acc = 0.0;
    double prev = std::arg(point(0.0) - about);
    for (int i = 1; i <= nodes; ++i) {
      const double cur = std::arg(point(static_cast<double>(i) / nodes) - about);
      acc += detail::wrap_angle(cur - prev);
      prev = cur;
    }
    return acc / detail::kTwoPi;
  }

  // Node of the endpoint-clustering reparametrization s -> angle
  // 2 pi s^2 (3 - 2s). The angle is reduced around the nearer endpoint,
  // using 1 - s^2(3-2s) = (1-s)^2 (1+2s) exactly, so the distance to the
  // branch point at the loop ends keeps full relative precision (a plain
  // e^{2 pi i sigma} loses it to the ulp of 2 pi once sigma approaches 1).
  struct ReparamNode {
    Complex t;        // position on the loop
    Complex dt_ds;    // derivative in s, reparametrization included
    double sigma;     // base parameter in [0, 1], for branch-tracker queries
  };

  ReparamNode reparam_node(double s) const {
    const double angle = s <= 0.5
                             ? detail::kTwoPi * s * s * (3.0 - 2.0 * s)
                             : -detail::kTwoPi * (1.0 - s) * (1.0 - s) * (1.0 + 2.0 * s);
    const double dangle = detail::kTwoPi * 6.0 * s * (1.0 - s);
    const double rho = radius();
    const Complex e = std::exp(Complex(0.0, angle));
    ReparamNode node;
    node.sigma = s <= 0.5 ? angle / detail::kTwoPi : 1.0 + angle / detail::kTwoPi;
    switch (kind_) {
      case ContourKind::loop_around_0_from_1:
        node.t = (1.0 - rho) + rho * e;
        node.dt_ds = Complex(0.0, dangle) * rho * e;
        break;
      case ContourKind::loop_around_1_from_0:
        node.t = rho - rho * e;
        node.dt_ds = Complex(0.0, -dangle) * rho * e;
        break;
      case ContourKind::vertical_line:
        throw std::domain_error("ContourPath: reparam_node applies to loops only");
    }
    return node;
  }

 private:
  static Complex phase(double s) {
    // reduce to [-1/2, 1/2] so both loop endpoints evaluate accurately
    const double r = s - std::round(s);
    return std::exp(Complex(0.0, detail::kTwoPi * r));
  }

  ContourKind kind_;
  double c0_;
};

// Circle through t = 1 encircling the origin once in the positive sense.
inline ContourPath make_loop_contour(double c0) {
  return ContourPath(ContourKind::loop_around_0_from_1, c0);
}

// Circle through t = 0 encircling t = 1 once in the positive sense.
inline ContourPath make_loop1_contour(double c0) {
  return ContourPath(ContourKind::loop_around_1_from_0, c0);
}

// Continuous-argument record of one multivalued factor g(s) along a path
// segment. The tracker refines its node grid until adjacent argument jumps
// are below max_jump (default pi/4), starting from the principal value at
// the first node. Queries unwrap the principal argument of the factor by
// the exact 2-pi-integer offset nearest the interpolated record, so powers
// evaluated between tracker nodes lose no precision.
class BranchTracker {
 public:
  template <class G>
  BranchTracker(G&& factor, double s_lo, double s_hi, double max_jump = 0.7853981633974483,
                int max_depth = 42)
      : s_lo_(s_lo), s_hi_(s_hi) {
    if (!(s_lo < s_hi)) throw std::invalid_argument("BranchTracker: empty parameter range");
    const int coarse = 64;
    s_.reserve(coarse + 1);
    raw_.reserve(coarse + 1);
    s_.push_back(s_lo);
    raw_.push_back(std::arg(factor(s_lo)));
    for (int i = 1; i <= coarse; ++i) {
      const double s1 = s_lo + (s_hi - s_lo) * i / coarse;
      refine(factor, s_.back(), raw_.back(), s1, std::arg(factor(s1)), max_jump, max_depth);
    }
    args_.resize(s_.size());
    args_[0] = raw_[0];
    for (std::size_t i = 1; i < s_.size(); ++i)
      args_[i] = args_[i - 1] + detail::wrap_angle(raw_[i] - raw_[i - 1]);
  }

  // Unwrapped argument of `value` = g(s) consistent with the tracked branch.
  double continuous_arg(double s, Complex value) const {
    const double approx = interpolate(s);
    const double principal = std::arg(value);
    const double k = std::round((approx - principal) / detail::kTwoPi);
    return principal + detail::kTwoPi * k;
  }

  double arg_start() const { return args_.front(); }
  double arg_end() const { return args_.back(); }
  double total_change() const { return args_.back() - args_.front(); }

 private:
  template <class G>
  void refine(G& factor, double s0, double p0, double s1, double p1, double max_jump, int depth) {
    if (std::abs(detail::wrap_angle(p1 - p0)) < max_jump) {
      s_.push_back(s1);
      raw_.push_back(p1);
      return;
    }
    if (depth <= 0)
      throw branch_error("BranchTracker: argument jump not resolved by maximal refinement");
    const double sm = 0.5 * (s0 + s1);
    const double pm = std::arg(factor(sm));
    refine(factor, s0, p0, sm, pm, max_jump, depth - 1);
    refine(factor, sm, pm, s1, p1, max_jump, depth - 1);
  }

  double interpolate(double s) const {
    if (s <= s_.front()) return args_.front();
    if (s >= s_.back()) return args_.back();
    std::size_t lo = 0, hi = s_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (s_[mid] <= s ? lo : hi) = mid;
    }
    const double frac = (s - s_[lo]) / (s_[lo + 1] - s_[lo]);
    return args_[lo] + frac * (args_[lo + 1] - args_[lo]);
  }

  double s_lo_, s_hi_;
  std::vector<double> s_;
  std::vector<double> raw_;
  std::vector<double> args_;
};

// value^p with the argument of `value` fixed by a tracked branch.
inline Complex pow_tracked(Complex value, double tracked_arg, Complex p) {
  return std::exp(p * Complex(std::log(std::abs(value)), tracked_arg));
}

}  // namespace hyperop
