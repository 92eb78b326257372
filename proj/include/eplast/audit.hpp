#pragma once

// Energy functionals of a state and the residuals of the mechanical and
// total energy balances.

#include "eplast/model.hpp"

namespace eplast {

struct EnergyReport {
  double t = 0.0;
  double kinetic = 0.0;
  double stored = 0.0;
  double hardening = 0.0;
  double heat = 0.0;
  double dissipation_rate = 0.0;
  double gravity_power = 0.0;
  double boundary_heat_in = 0.0;
  double adiabatic_exchange = 0.0;  // power flowing from heat into mechanics
  double mech_residual = 0.0;
  double total_residual = 0.0;
  double mech_residual_rel = 0.0;
  double total_residual_rel = 0.0;

  double mechanical() const { return kinetic + stored + hardening; }
  double total(bool count_hardening) const { return kinetic + stored + heat + (count_hardening ? hardening : 0.0); }
  bool all_finite() const;
};

struct AuditSettings {
  bool count_hardening_in_total = true;
  double eps_scale = 1e-12;  // W, floor of the residual normalization
  friend bool operator==(const AuditSettings&, const AuditSettings&) = default;
};

// Kinetic, stored, hardening and heat energies from the state alone; rate
// fields are left at zero.
EnergyReport state_energies(const StateFields& state, const Physics& physics, double t);

double mechanical_balance_residual(const EnergyReport& before, const EnergyReport& after, double dt);
double total_balance_residual(const EnergyReport& before, const EnergyReport& after, double dt,
                              bool count_hardening = true);

// Fills both residuals and their dimensionless ratios in after.
void close_balances(const EnergyReport& before, EnergyReport& after, double dt, const AuditSettings& settings);

struct KinematicReport {
  double deformation = 0.0;  // dF/dt + (v.grad)F - (grad v)F
  double jacobian = 0.0;     // dJ/dt + v.grad J - J div v
  double continuity = 0.0;   // d rho/dt + div(rho v)
};

// Volume-averaged L1 residuals of the kinematic identities between two
// consecutive states.
KinematicReport kinematic_identity_suite(const StateFields& before, const StateFields& after, const VectorField& v,
                                         double dt, const MaterialModel& material);

}  // namespace eplast
