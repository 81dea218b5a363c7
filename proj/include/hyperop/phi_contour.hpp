#pragma once

#include <cmath>
#include <complex>

#include "hyperop/contour.hpp"
#include "hyperop/quadrature.hpp"
#include "hyperop/special.hpp"

namespace hyperop {

// Loop-integral representation of the Kummer function,
//
//   Phi(alpha; beta; Z) = -(1/(2 i pi)) Gamma(1-alpha) Gamma(beta) / Gamma(beta-alpha)
//                          * oint e^{Z t} (-t)^{alpha-1} (1-t)^{beta-alpha-1} dt,
//
// over a loop from t = 1 around the origin, valid for Re(beta - alpha) > 0.
// c0 in (0, 1) selects the circle through t = 1 with center 1 - 1/(2 c0);
// the result is c0-independent. The multivalued powers use continuous
// argument tracking from principal values at the path start, and the
// endpoint t = 1 is absorbed by a smooth endpoint-vanishing
// reparametrization of the circle parameter.
inline Complex confluent_phi_contour(Complex alpha, Complex beta, Complex z, double c0,
                                     const QuadratureSpec& spec = {}) {
  if (!((beta - alpha).real() > 0.0))
    throw std::domain_error("confluent_phi_contour: requires Re(beta - alpha) > 0");
  const ContourPath path = make_loop_contour(c0);
  const double eps = 1e-9;
  BranchTracker trk_neg([&](double s) { return -path.point(s); }, eps, 1.0 - eps);
  BranchTracker trk_om([&](double s) { return 1.0 - path.point(s); }, eps, 1.0 - eps);

  auto integrand = [&](double s) -> Complex {
    const ContourPath::ReparamNode node = path.reparam_node(s);
    const Complex t = node.t;
    const Complex neg = -t;
    const Complex om = 1.0 - t;
    if (om == Complex{}) return {};  // rounded onto the branch point; weight is negligible there
    const Complex powers = pow_tracked(neg, trk_neg.continuous_arg(node.sigma, neg), alpha - 1.0) *
                           pow_tracked(om, trk_om.continuous_arg(node.sigma, om), beta - alpha - 1.0);
    return std::exp(z * t) * powers * node.dt_ds;
  };
  const QuadratureResult q = integrate(integrand, 0.0, 1.0, spec);

  const Complex pref = gamma_ratio({1.0 - alpha, beta}, {beta - alpha});
  return -pref / Complex(0.0, detail::kTwoPi) * q.value;
}

}  // namespace hyperop
