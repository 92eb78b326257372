#pragma once

// Plain serial versions of the data-parallel kernels. They are written
// straight from the stencil definitions, share no code with the parallel
// kernels, and exist for cross-checking and benchmarking only.

#include "eplast/grid.hpp"

namespace eplast::reference {

// d_b v_a with zero ghosts.
TensorField velocity_gradient(const VectorField& v);

// Transpose of velocity_gradient applied to a tensor field.
VectorField velocity_gradient_transpose(const TensorField& S);

// RK2 semi-Lagrangian step of a scalar with bilinear interpolation.
ScalarField semi_lagrangian(const ScalarField& f, const VectorField& v, double dt);

// Donor-cell flux-form transport of a scalar.
ScalarField donor_cell_transport(const ScalarField& w, const VectorField& v, double dt);

// Left-to-right sum of interior values times the cell volume.
double integrate(const ScalarField& f);

}  // namespace eplast::reference
