#pragma once

#include <stdexcept>

namespace hyperop {

// Gamma pole or vanishing Pochhammer factor inside a finite sum.
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A series summation failed to reach its stopping rule.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive refinement exhausted its panel/evaluation budget.
struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Continuous-argument tracking found an unresolvable jump along a path.
struct branch_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hyperop
