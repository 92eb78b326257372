#pragma once

// Momentum balance and plastic flow rule for one time step.

#include "eplast/model.hpp"

namespace eplast {

struct MomentumWorkspace {
  TensorField stress;       // elastic Cauchy stress
  TensorField dissipative;  // nu0 |e|^{p-2} e(v') plus the weak hyperstress divergence
  VectorField residual;     // A v' - b of the final linear system
  VectorField momentum;     // rho v^n
};

struct MomentumResult {
  VectorField v;
  MomentumWorkspace work;
  int cg_iterations = 0;
  int picard_iterations = 0;
};

// Semi-implicit velocity update on the transported state: explicit elastic
// stress, convection and gravity; implicit viscosity and hyperviscosity with
// lagged |e|^{p-2} and |grad e|^{p-2}.
MomentumResult momentum_step(const StateFields& state, const Physics& physics, const SolverSettings& settings,
                             double dt);

struct FlowRuleResult {
  TensorField Lp;
  int iterations = 0;  // Newton iterations, 1 for the linear case
  int cg_iterations = 0;
  double residual = 0.0;  // relative nonlinear residual after the last sweep
};

// Solves J^-1 M(theta) Lp - div(nu2 |grad Lp|^{q-2} grad Lp) = J^-1 dev(Mandel)
// with zero normal derivative of Lp; the result is trace-free per cell.
FlowRuleResult flow_rule_step(const StateFields& state, const Physics& physics, const SolverSettings& settings);

// nu0 |e|^p + nu1 |grad e|^p + nu2 |grad Lp|^q + J^-1 M(theta) |Lp|^2
ScalarField dissipation_density(const StateFields& state, const VectorField& v, const TensorField& Lp,
                                const Physics& physics);

// Body force density, with det replaced by det_lambda when the cutoff is on.
ScalarField gravity_density(const VectorField& xi, const Physics& physics);

// Elastic Cauchy stress per cell at the clamped temperature.
TensorField elastic_stress_field(const StateFields& state, const Kinematics& kin, const Physics& physics);

}  // namespace eplast
