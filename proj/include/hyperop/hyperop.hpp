#pragma once

// Umbrella header: inversion of an integro-differential operator on entire
// functions vanishing at the origin, by triangular hypergeometric matrix
// identities, loop/line contour integrals, and a singular Volterra
// reformulation, cross-validated against each other.

#include "hyperop/contour.hpp"
#include "hyperop/errors.hpp"
#include "hyperop/harness.hpp"
#include "hyperop/inverse.hpp"
#include "hyperop/json_io.hpp"
#include "hyperop/matrix_system.hpp"
#include "hyperop/operator_l.hpp"
#include "hyperop/params.hpp"
#include "hyperop/phi_contour.hpp"
#include "hyperop/prng.hpp"
#include "hyperop/quadrature.hpp"
#include "hyperop/series.hpp"
#include "hyperop/special.hpp"
#include "hyperop/trimatrix.hpp"
#include "hyperop/volterra.hpp"
