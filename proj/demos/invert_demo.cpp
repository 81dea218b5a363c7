// Invert the operator image of f(z) = z by all four routes and print the
// recovered values next to the exact ones.

#include <iostream>

#include "hyperop/hyperop.hpp"

int main() {
  using namespace hyperop;

  const Params p = Params::make({0.4, 0.0}, {-2.0, 0.0});
  QuadratureSpec quad;
  quad.abs_tol = quad.rel_tol = 1e-10;

  const EntireSeries f({Complex{1.0, 0.0}});  // f(z) = z
  const H0Function k = [&](Complex w) { return apply_l(p, f, w, quad).value; };
  const SignedSeries k_coeffs = forward_system(p, f, 24);

  std::cout << "recovering f(z) = z from its operator image K = L f\n\n";
  for (const Complex z : {Complex{0.3, 0.0}, Complex{0.0, 0.5}, Complex{-0.2, 0.4}}) {
    const Complex series = invert_l_series(p, k_coeffs, 24)(z);
    const Complex loop0 = invert_l_loop0(p, k, z, 0.5, quad);
    const Complex loop1 = invert_l_loop1(p, k, z, 0.5, quad);
    const Complex line = invert_l_line(p, k, z, 0.5, quad);
    std::cout << "z      = " << z << "\n"
              << "series = " << series << "\n"
              << "loop0  = " << loop0 << "\n"
              << "loop1  = " << loop1 << "\n"
              << "line   = " << line << "\n\n";
  }
  return 0;
}
