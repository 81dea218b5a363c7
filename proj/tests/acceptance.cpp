// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances and runtime budgets are fixed here, not
// configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "hyperop/hyperop.hpp"
#include "support/oracles.hpp"

using namespace hyperop;

namespace {

struct Outcome {
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
  bool known_defect = false;  // annotation only; still counts as a failure
};

EntireSeries random_series(SplitMix64& rng, int order) {
  EntireSeries f = EntireSeries::zero(order);
  for (int l = 1; l <= order; ++l) f.set_coeff(l, rng.complex_in_box(-1, 1, -1, 1));
  return f;
}

QuadratureSpec quad(double tol) {
  QuadratureSpec q;
  q.abs_tol = q.rel_tol = tol;
  return q;
}

EntireSeries remark_series(double x, int order) {
  EntireSeries f = EntireSeries::zero(order);
  double pw = 1.0;
  for (int l = 1; l <= order; ++l) {
    f.set_coeff(l, Complex(l * pw, 0.0));
    pw *= 1.0 - x;
  }
  return f;
}

// ---- criterion 1: triangular inversion pair ------------------------------

void criterion_inversion_pair(Outcome& out) {
  out.tolerance = 1e-10;
  // certified draw region: combinatorial growth of the pair entries makes
  // wider boxes incompatible with 1e-10 in IEEE double (the identity
  // residual floor is Sigma_k |B_nk||A_km| * eps)
  SplitMix64 rng(0xC1u);
  for (int draw = 0; draw < 25; ++draw) {
    const Complex x = rng.complex_in_box(0.12, 0.30, -0.06, 0.06);
    const Complex nu = rng.complex_in_box(-0.50, 0.20, -0.12, 0.12);
    const Params p = Params::make(x, nu, ParamRange::representation_only);
    const TriMatrix a = build_a(p, 12);
    const TriMatrix b = build_b(p, 12);
    out.max_residual = std::max(out.max_residual, b.multiply(a).identity_residual());
    out.max_residual = std::max(out.max_residual, a.multiply(b).identity_residual());
  }
}

// ---- criterion 2: Q-matrix triple agreement ------------------------------

Complex q_from_moments(const Params& p, int b, int ell, const QuadratureSpec& qs) {
  auto moment = [&](int l) {
    auto integrand = [&](double zeta) -> Complex {
      Complex rb{1.0, 0.0};
      const Complex r = r_eval(p, zeta);
      for (int i = 0; i < b; ++i) rb *= r;
      return std::pow(zeta, static_cast<double>(l)) * rb;
    };
    return integrate(integrand, 0.0, 1.0, qs).value;
  };
  return static_cast<double>(ell + 1 - b) * moment(ell) -
         static_cast<double>(ell) * p.c() * moment(ell - 1);
}

Complex q_intermediate_closed_form(const Params& p, int b, int ell) {
  const Complex x = p.x(), nu = p.nu();
  const double bd = b, ld = ell;
  const Complex bn = bd * nu;
  const Complex pref = -gamma_ratio({Complex(ld), 1.0 - bn}, {Complex(ld) + 1.0 - bn}) *
                       std::pow(x, bd + 1.0) / (1.0 - x);
  Complex bracket = (ld - bn) * oracles::gauss_2f1_series(bd * (1.0 - nu), Complex(ld),
                                                          Complex(ld) - bn, 1.0 - x);
  if (b != ell)
    bracket += nu * (bd - ld) * oracles::gauss_2f1_series(bd * (1.0 - nu), Complex(ld),
                                                          Complex(ld) + 1.0 - bn, 1.0 - x);
  return pref * bracket;
}

void criterion_q_triple(Outcome& out) {
  out.tolerance = 1e-9;
  // real point: hypergeometric-polynomial form vs moment quadrature vs the
  // intermediate general-series closed form
  {
    const Params p = Params::make({0.4, 0.0}, {-2.0, 0.0});
    QuadratureSpec qs;
    qs.abs_tol = 1e-19;
    qs.rel_tol = 1e-14;
    const TriMatrix q = build_q(p, 8);
    for (int b = 1; b <= 8; ++b)
      for (int ell = 1; ell <= b; ++ell) {
        const double scale = std::abs(q(b, ell));
        out.max_residual = std::max(
            out.max_residual, std::abs(q(b, ell) - q_from_moments(p, b, ell, qs)) / scale);
        out.max_residual = std::max(
            out.max_residual, std::abs(q(b, ell) - q_intermediate_closed_form(p, b, ell)) / scale);
      }
  }
  // complex point: closed forms only
  {
    const Params p = Params::make({0.3, 0.1}, {-1.5, 0.2});
    const TriMatrix q = build_q(p, 8);
    for (int b = 1; b <= 8; ++b)
      for (int ell = 1; ell <= b; ++ell)
        out.max_residual =
            std::max(out.max_residual, std::abs(q(b, ell) - q_intermediate_closed_form(p, b, ell)) /
                                           std::abs(q(b, ell)));
  }
}

// ---- criterion 3: closed-form image of z e^{(1-x) z} ---------------------

const std::vector<Complex> kRemarkSamples{{0.5, 0.0}, {0.3, 0.2}, {-0.2, 0.4},
                                          {0.0, -0.45}, {0.15, 0.0}};

void criterion_remark_as_stated(Outcome& out) {
  out.tolerance = 1e-7;
  const double x = 0.4;
  const EntireSeries f = remark_series(x, 30);
  for (const double nu : {-0.5, -1.0, -2.0}) {
    const Params p = Params::make({x, 0.0}, {nu, 0.0});
    for (const Complex& z : kRemarkSamples) {
      const Complex claimed = -z * std::exp(-z) / (1.0 - x);
      out.max_residual =
          std::max(out.max_residual, std::abs(apply_l(p, f, z, quad(1e-11)).value - claimed));
    }
  }
  out.note =
      "stated closed form -z e^{-z}/(1-x) contradicts the operator definition: the triangular "
      "system forces the leading coefficient -x/(1-x), and reducing the integral by parts gives "
      "-(x z/(1-x)) Phi(1-1/nu; 2-1/nu; -x z); see the corrected variant below";
}

void criterion_remark_corrected(Outcome& out) {
  out.tolerance = 1e-7;
  const double x = 0.4;
  const EntireSeries f = remark_series(x, 30);
  for (const double nu : {-0.5, -1.0, -2.0}) {
    const Params p = Params::make({x, 0.0}, {nu, 0.0});
    for (const Complex& z : kRemarkSamples) {
      const Complex expected =
          -(x * z / (1.0 - x)) * confluent_phi_series(1.0 - 1.0 / nu, 2.0 - 1.0 / nu, -x * z);
      out.max_residual =
          std::max(out.max_residual, std::abs(apply_l(p, f, z, quad(1e-11)).value - expected));
    }
  }
}

// ---- criterion 4: factorization ------------------------------------------

void criterion_factorization(Outcome& out) {
  out.tolerance = 1e-6;
  const Params p = Params::make({0.4, 0.0}, {-2.0, 0.0});
  SplitMix64 rng(0xC4u);
  for (int draw = 0; draw < 20; ++draw) {
    const EntireSeries f = random_series(rng, 8);
    const std::vector<Complex> zs{rng.complex_in_disc(0.5)};
    out.max_residual = std::max(out.max_residual, factorization_check(p, f, zs, quad(1e-11)));
  }
}

// ---- criterion 5: four-route inverse agreement ----------------------------

void criterion_four_routes(Outcome& out) {
  out.tolerance = 1e-7;  // pairwise agreement; round trips at 1e-6 below
  SplitMix64 rng(0xC5u);
  double worst_pair = 0.0, worst_round = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const Complex x = rng.complex_in_box(0.30, 0.50, -0.10, 0.10);
    const Complex nu = rng.complex_in_box(-2.0, -0.5, -0.20, 0.20);
    const Params p = Params::make(x, nu);
    const Complex z = rng.complex_in_disc(0.5);

    // pairwise: all four routes applied to the same truncated input
    const EntireSeries k = random_series(rng, 8);
    const Complex v_series = invert_l_series(p, to_signed(k), 30)(z);
    const Complex v0 = invert_l_loop0(p, k, z, 0.5, quad(1e-9));
    const Complex v1 = invert_l_loop1(p, k, z, 0.5, quad(1e-9));
    const Complex vl = invert_l_line(p, k, z, 0.5, quad(1e-9));
    worst_pair = std::max({worst_pair, std::abs(v_series - v0), std::abs(v_series - v1),
                           std::abs(v_series - vl), std::abs(v0 - v1), std::abs(v0 - vl),
                           std::abs(v1 - vl)});

    // round trip against the quadrature operator
    const EntireSeries f = random_series(rng, 8);
    const H0Function kf = [&](Complex w) { return apply_l(p, f, w, quad(1e-10)).value; };
    const Complex expect = f(z);
    worst_round = std::max(worst_round, std::abs(invert_l_loop0(p, kf, z, 0.5, quad(1e-9)) - expect));
    worst_round = std::max(worst_round, std::abs(invert_l_loop1(p, kf, z, 0.5, quad(1e-9)) - expect));
    worst_round = std::max(worst_round, std::abs(invert_l_line(p, kf, z, 0.5, quad(1e-9)) - expect));
    const EntireSeries e = invert_l_series(p, forward_system(p, f, 26), 26);
    worst_round = std::max(worst_round, std::abs(e(z) - expect));
  }
  out.max_residual = std::max(worst_pair, worst_round * 0.1);  // round trips certified at 1e-6
  char buf[120];
  std::snprintf(buf, sizeof buf, "pairwise %.2e (tol 1e-7), roundtrip %.2e (tol 1e-6)", worst_pair,
                worst_round);
  out.note = buf;
}

// ---- criterion 6: contour independence ------------------------------------

void criterion_contour_independence(Outcome& out) {
  out.tolerance = 1e-9;
  const Params p = Params::make({0.4, 0.0}, {-2.0, 0.0});
  SplitMix64 rng(0xC6u);
  const EntireSeries k = random_series(rng, 6);
  double worst_loop = 0.0, worst_line = 0.0;
  for (const Complex z : {Complex{0.3, 0.0}, Complex{0.1, 0.25}, Complex{-0.2, 0.15}}) {
    const Complex l25 = invert_l_loop0(p, k, z, 0.25, quad(1e-11));
    const Complex l50 = invert_l_loop0(p, k, z, 0.50, quad(1e-11));
    const Complex l75 = invert_l_loop0(p, k, z, 0.75, quad(1e-11));
    worst_loop = std::max({worst_loop, std::abs(l25 - l50), std::abs(l50 - l75)});
    const Complex v3 = invert_l_line(p, k, z, 0.3, quad(1e-11));
    const Complex v7 = invert_l_line(p, k, z, 0.7, quad(1e-11));
    worst_line = std::max(worst_line, std::abs(v3 - v7));
  }
  out.max_residual = std::max(worst_loop, worst_line * 0.1);  // line certified at 1e-8
  char buf[120];
  std::snprintf(buf, sizeof buf, "loop %.2e (tol 1e-9), line %.2e (tol 1e-8)", worst_loop,
                worst_line);
  out.note = buf;
}

// ---- criterion 7: Volterra consistency -------------------------------------

void criterion_volterra(Outcome& out) {
  out.tolerance = 1e-6;
  SplitMix64 rng(0xC7u);
  double worst_m = 0.0, worst_slope = 0.0, worst_theta = 0.0;
  for (const double nu : {-0.5, -2.0}) {
    const Params p = Params::make({0.4, 0.0}, {nu, 0.0});
    for (int draw = 0; draw < 10; ++draw) {
      const EntireSeries f = random_series(rng, 6);
      const Complex z = rng.complex_in_disc(0.5);
      worst_m = std::max(worst_m, std::abs(apply_m_volterra(p, f, z, quad(1e-10)).value -
                                           apply_m(p, f, z, quad(1e-10)).value));
    }
    for (const Branch br : {Branch::minus, Branch::plus})
      worst_slope =
          std::max(worst_slope, std::abs(kernel_singularity_slope(p, br, {0.3, 0.1}) + 0.5));
    const double th = nu / (nu - 1.0);
    const double tauh = std::pow(th, -nu) * (1.0 - th);
    for (int i = 0; i <= 1000; ++i) {
      const double tau = tauh * i / 1000.0;
      for (const Branch br : {Branch::minus, Branch::plus}) {
        const double t = theta(p, br, tau);
        worst_theta = std::max(worst_theta, std::abs(std::pow(t, -nu) * (1.0 - t) - tau));
      }
    }
  }
  out.max_residual = worst_m;
  if (worst_slope >= 0.02) out.max_residual = std::max(out.max_residual, 10 * out.tolerance);
  if (worst_theta >= 1e-12) out.max_residual = std::max(out.max_residual, 10 * out.tolerance);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "operator %.2e (tol 1e-6), slope dev %.3f (tol 0.02), theta %.2e (tol 1e-12)",
                worst_m, worst_slope, worst_theta);
  out.note = buf;
}

// ---- criterion 8: exponential generating function identity -----------------

void criterion_egf(Outcome& out) {
  out.tolerance = 1e-9;
  const Params p = Params::make({0.3, 0.0}, {-1.2, 0.0});
  SplitMix64 rng(0xC8u);
  const int n_t = 10, n_out = 40;
  const TriMatrix b = build_b(p, n_out);
  for (int draw = 0; draw < 20; ++draw) {
    SignedSeries t = SignedSeries::zero(n_t);
    for (int k = 1; k <= n_t; ++k) t.coeffs[k - 1] = rng.complex_in_box(-1, 1, -1, 1);
    const Complex z = rng.complex_in_disc(0.8);
    std::vector<Complex> padded(n_out, Complex{});
    for (int k = 1; k <= n_t; ++k) padded[k - 1] = t.coeffs[k - 1];
    const Complex via_matrix = EntireSeries(b.apply(padded))(z);
    out.max_residual =
        std::max(out.max_residual, std::abs(egf_identity_eval(p, t, z) - via_matrix));
  }
}

// ---- criterion 9: special-function identity suite ---------------------------

void criterion_special_suite(Outcome& out) {
  out.tolerance = 1e-10;
  SplitMix64 rng(0xC9u);
  double worst = 0.0;
  auto rel = [](Complex got, Complex want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };

  // Euler integral representation
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 4);
    const Complex beta = rng.complex_in_box(1.0, 2.5, -0.5, 0.5);
    const Complex gamma = beta + rng.complex_in_box(0.8, 2.0, -0.5, 0.5);
    const Complex z = rng.complex_in_disc(0.8);
    auto integrand = [&](double s) -> Complex {
      return std::pow(Complex(s), beta - 1.0) * std::pow(Complex(1.0 - s), gamma - beta - 1.0) *
             std::pow(1.0 - z * s, static_cast<double>(m));
    };
    const Complex via_integral = gamma_ratio({gamma}, {beta, gamma - beta}) *
                                 integrate(integrand, 0.0, 1.0, quad(1e-13)).value;
    worst = std::max(worst, rel(gauss_f_poly(m, beta, gamma, z), via_integral));
  }

  // contiguity (beta/gamma shift)
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 6);
    const Complex beta = rng.complex_in_box(-2.0, 2.0, 0.1, 1.0);
    const Complex gamma = rng.complex_in_box(-2.0, 2.0, 0.1, 1.0);
    const Complex z = rng.complex_in_disc(0.9);
    const Complex lhs = beta * gauss_f_poly(m, beta + 1.0, gamma + 1.0, z);
    const Complex rhs = gamma * gauss_f_poly(m, beta, gamma, z) -
                        (gamma - beta) * gauss_f_poly(m, beta, gamma + 1.0, z);
    worst = std::max(worst, rel(lhs, rhs));
  }

  // contiguity (three-term gamma shift)
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 6);
    const Complex alpha(-static_cast<double>(m), 0.0);
    const Complex beta = rng.complex_in_box(-2.0, 2.0, 0.1, 1.0);
    const Complex gamma = rng.complex_in_box(-2.0, 2.0, 0.15, 1.2);
    const Complex z = rng.complex_in_disc(0.9);
    const Complex lhs =
        gamma * (gamma - 1.0 - (2.0 * gamma - alpha - beta - 1.0) * z) *
            gauss_f_poly(m, beta, gamma, z) +
        (gamma - alpha) * (gamma - beta) * z * gauss_f_poly(m, beta, gamma + 1.0, z);
    const Complex rhs = gamma * (gamma - 1.0) * (1.0 - z) * gauss_f_poly(m, beta, gamma - 1.0, z);
    worst = std::max(worst, rel(lhs, rhs));
  }

  // Euler transformation on polynomial-compatible draws
  for (int t = 0; t < 50; ++t) {
    const int m1 = static_cast<int>(rng.next() % 5);
    const int m2 = static_cast<int>(rng.next() % 5);
    const Complex gamma = rng.complex_in_box(-1.5, 2.5, 0.2, 1.0);
    const Complex z = rng.complex_in_disc(0.85);
    const Complex lhs = gauss_f_poly(m1, gamma + static_cast<double>(m2), gamma, z);
    const Complex rhs = std::pow(1.0 - z, static_cast<double>(m1 - m2)) *
                        gauss_f_poly(m2, gamma + static_cast<double>(m1), gamma, z);
    worst = std::max(worst, rel(lhs, rhs));
  }

  // derivative identity through the exact polynomial derivative
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + static_cast<int>(rng.next() % 6);
    const Complex beta = rng.complex_in_box(-2.0, 2.0, 0.1, 1.0);
    const Complex gamma = rng.complex_in_box(-2.0, 2.0, 0.15, 1.2);
    const Complex z = rng.complex_in_disc(0.9);
    Complex deriv{};
    Complex term{1.0, 0.0};
    Complex zpow{1.0, 0.0};
    for (int j = 0; j < m; ++j) {
      term *= (static_cast<double>(j - m)) * (beta + static_cast<double>(j)) /
              ((gamma + static_cast<double>(j)) * static_cast<double>(j + 1));
      deriv += static_cast<double>(j + 1) * term * zpow;
      zpow *= z;
    }
    const Complex rhs =
        (-static_cast<double>(m)) * beta / gamma * gauss_f_poly(m - 1, beta + 1.0, gamma + 1.0, z);
    worst = std::max(worst, rel(deriv, rhs));
  }

  // reflection between arguments x and 1-x
  for (int t = 0; t < 50; ++t) {
    const int m = static_cast<int>(rng.next() % 9);
    const Complex beta = rng.complex_in_box(-1.0, 1.5, 0.2, 0.9);
    const Complex gamma = beta + rng.complex_in_box(0.5, 2.5, 0.2, 0.9);
    const Complex x = rng.complex_in_box(0.2, 0.8, -0.3, 0.3);
    const Complex lhs = gauss_f_poly(m, beta, gamma, 1.0 - x);
    const Complex rhs = gamma_ratio({gamma, gamma - beta + static_cast<double>(m)},
                                    {gamma - beta, gamma + static_cast<double>(m)}) *
                        gauss_f_poly(m, beta, beta + 1.0 - static_cast<double>(m) - gamma, x);
    worst = std::max(worst, rel(lhs, rhs));
  }

  // Kummer function: series vs loop contour
  for (int t = 0; t < 50; ++t) {
    const Complex a = rng.complex_in_box(-2.5, 0.4, -0.6, 0.6);
    const Complex b = a + rng.complex_in_box(0.9, 3.0, -0.5, 0.5);
    const Complex z = rng.complex_in_disc(1.5);
    worst = std::max(worst, rel(confluent_phi_contour(a, b, z, 0.5, quad(1e-12)),
                                confluent_phi_series(a, b, z)));
  }

  out.max_residual = worst;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"criterion 1: triangular inversion pair (25 draws, N=12)", 5.0, criterion_inversion_pair},
      {"criterion 2: Q-matrix triple agreement (b<=8)", 10.0, criterion_q_triple},
      {"criterion 3: closed-form image, as stated", 10.0, criterion_remark_as_stated, true},
      {"criterion 3*: closed-form image, corrected constant", 10.0, criterion_remark_corrected},
      {"criterion 4: delta-factorization residual (20 draws)", 30.0, criterion_factorization},
      {"criterion 5: four-route inverse agreement (10 draws)", 60.0, criterion_four_routes},
      {"criterion 6: contour independence", 30.0, criterion_contour_independence},
      {"criterion 7: Volterra consistency", 30.0, criterion_volterra},
      {"criterion 8: EGF identity (20 draws)", 5.0, criterion_egf},
      {"criterion 9: special-function identity suite", 20.0, criterion_special_suite},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    bool threw = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      threw = true;
      out.note = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool within_budget = elapsed < c.budget_seconds;
    const bool pass = !threw && within_budget && out.max_residual < out.tolerance;
    if (!pass) ++failures;

    std::printf("%s  %-58s max_residual=%.3e tol=%.0e (%.2fs/%.0fs)%s\n", pass ? "PASS" : "FAIL",
                c.name.c_str(), out.max_residual, out.tolerance, elapsed, c.budget_seconds,
                !within_budget ? " [over budget]" : "");
    if (!out.note.empty()) std::printf("      note: %s\n", out.note.c_str());
    if (!pass && c.known_defect)
      std::printf("      (defect in the stated closed form; the corrected variant below certifies "
                  "the same operator image)\n");
  }

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
