#pragma once

#include "eplast/constitutive.hpp"
#include "eplast/linsolve.hpp"
#include "eplast/transport.hpp"

namespace eplast {

// Everything the step needs to know about the physics.
struct Physics {
  MaterialModel material{};
  DissipationParams dissipation{};
  CutoffParams cutoff{};
  BoundaryConditions boundary{};
  Vec2 gravity{};
  friend bool operator==(const Physics&, const Physics&) = default;
};

struct SolverSettings {
  CgSettings cg{};
  int picard_momentum = 1;
  int flow_iterations = 20;  // Newton cap for the flow rule
  double picard_tolerance = 1e-8;
  double cfl_cap = 0.9;
  double theta_floor = -1e-6;  // raw temperature below this aborts the run
  friend bool operator==(const SolverSettings&, const SolverSettings&) = default;
};

// Per-cell kinematics shared by every module within one step.
struct Kinematics {
  TensorField grad_xi;
  TensorField Fe;
  ScalarField jacobian_inv;  // 1 / det Fe
};

Kinematics kinematics(const VectorField& xi, const TensorField& Fp);

// Temperature handed to constitutive laws: raw values below zero are clamped.
inline double constitutive_temperature(double theta) { return theta > 0.0 ? theta : 0.0; }

}  // namespace eplast
