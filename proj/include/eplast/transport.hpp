#pragma once

// State of the simulator, transport of the reference map and plastic
// distortion, and the derived density.

#include <functional>

#include "eplast/constitutive.hpp"
#include "eplast/operators.hpp"

namespace eplast {

struct StateFields {
  VectorField v;      // velocity
  VectorField xi;     // reference map; the ghost layer is part of the data
  TensorField Fp;     // plastic distortion
  ScalarField w;      // enthalpy, authoritative thermal state
  ScalarField theta;  // raw temperature recovered from w

  explicit StateFields(const Grid& g = {})
      : v(g), xi(g), Fp(g, Tensor2::identity(2)), w(g), theta(g) {}

  const Grid& grid() const { return v.grid(); }
  friend bool operator==(const StateFields&, const StateFields&) = default;
};

// Sticky-air walls: Dirichlet velocity, natural hyperstress through mirrored
// strain-rate ghosts, Neumann plastic rate, and a heat-flux model.
struct BoundaryConditions {
  Ghost velocity = Ghost::zero;
  Ghost strain_rate = Ghost::mirror;
  Ghost plastic_rate = Ghost::mirror;
  BoundaryFlux heat{};
  friend bool operator==(const BoundaryConditions&, const BoundaryConditions&) = default;
};

// Zeroes the velocity on the boundary ring and in the ghost layer.
StateFields apply_boundary_conditions(StateFields state);
void zero_boundary(VectorField& v);

// grad xi using the stored ghost layer.
TensorField reference_gradient(const VectorField& xi);

// Throws CflViolation when the CFL number exceeds cap.
void check_cfl(const VectorField& v, double dt, double cap);

VectorField advect_reference_map(const VectorField& xi, const VectorField& v, double dt, double cfl_cap = 0.9);

// Transport only; the local plastic update is applied separately.
TensorField transport_plastic_distortion(const TensorField& Fp, const VectorField& v, double dt,
                                         double cfl_cap = 0.9);

// Fp <- exp(dt Lp) Fp per cell. Throws NonDeviatoricRate for traced Lp.
TensorField plastic_exponential_update(const TensorField& Fp, const TensorField& Lp, double dt);

TensorField advect_plastic_distortion(const TensorField& Fp, const VectorField& v, const TensorField& Lp,
                                      double dt, double cfl_cap = 0.9);

TensorField renormalize_isochoric(const TensorField& Fp);

// Largest |det Fp - 1| over interior cells.
double max_isochoric_defect(const TensorField& Fp);

using DensityMap = std::function<double(const Point&)>;

ScalarField derived_density(const VectorField& xi, const DensityMap& rho_R);
ScalarField derived_density(const VectorField& xi, const MaterialModel& m);

// Cell averages of the derived density: rho_R integrated over the image of
// each cell under the bilinear map through the cell-corner values of xi
// (means of the four adjacent centres, ghosts included). Neighbouring images
// share edges, so the total is the rho_R-mass of a region fixed by the
// boundary ring and ghosts, up to the 4x4 Gauss rule on each image. Used for
// the mass audit; the dynamics use the pointwise derived_density.
ScalarField cell_average_density(const VectorField& xi, const DensityMap& rho_R);
ScalarField cell_average_density(const VectorField& xi, const MaterialModel& m);
double derived_mass(const VectorField& xi, const MaterialModel& m);

// Volume-weighted L1 norm of (rho_after - rho_before)/dt + div(rho_before v).
double continuity_residual(const ScalarField& rho_before, const ScalarField& rho_after, const VectorField& v,
                           double dt, Ghost g = Ghost::extrapolate);

// Fe = (Fp grad xi)^-1 per cell.
TensorField elastic_strain_field(const TensorField& Fp, const TensorField& grad_xi);

}  // namespace eplast
