#pragma once

#include "tvstokes/field.hpp"

namespace tvstokes {

// Finite-difference operators on the unit-spaced grid.
//
// grad uses forward differences and sets the difference that would leave the
// grid to zero (homogeneous Neumann). div is the exact negative adjoint of
// grad, so <grad u, p> + <u, div p> = 0 holds for every pair of fields.
// jacobian / div_tensor apply the same pair component-wise.

VecField grad(const ScalarField& u);
ScalarField div(const VecField& p);

TensorField jacobian(const VecField& n);
VecField div_tensor(const TensorField& p);

/// div(grad(u)): the 5-point Neumann Laplacian.
ScalarField laplacian(const ScalarField& u);

}  // namespace tvstokes
