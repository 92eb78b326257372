#pragma once

// Enthalpy-form heat step: advection with volume change, dissipative and
// adiabatic sources, backward conduction with boundary flux, temperature
// recovery and the non-negativity monitor.

#include "eplast/model.hpp"

namespace eplast {

struct HeatSources {
  ScalarField dissipative;  // W/m^3, >= 0
  ScalarField adiabatic;    // W/m^3, signed
  ScalarField compression;  // -w div v, filled by heat_step
};

// J^-1 pi gamma'_Fe : (grad v Fe - Fe Lp); for the planar neo-Hookean family
// this is -c1 theta^alpha tr(grad v) when Lp is trace-free.
ScalarField adiabatic_power(const StateFields& state, const Physics& physics, const TensorField& grad_v,
                            const TensorField& Lp);

struct TemperatureReport {
  double min_theta = 0.0;
  double fraction_negative = 0.0;
  double negative_norm = 0.0;  // integral of |min(theta, 0)|^{1+alpha}
};

TemperatureReport temperature_nonnegativity_monitor(const ScalarField& theta, double alpha);

// Raw temperature for an enthalpy value; below zero the enthalpy is
// extended linearly with slope d omega/d theta at theta = 0.
double raw_temperature(const MaterialModel& m, const Point& X, const Tensor2& Fe, double w);

// One explicit step of dw/dt + div(w v) = 0 with donor-cell face fluxes and
// face speeds averaged from cell centres. The interior sum of w is unchanged
// when v vanishes on the boundary ring; w stays non-negative while
// dt (|vx|/hx + |vy|/hy) <= 1.
ScalarField donor_cell_transport(const ScalarField& w, const VectorField& v, double dt);

struct HeatStepResult {
  ScalarField w;
  ScalarField theta;
  HeatSources sources;
  double boundary_heat_in = 0.0;  // W per unit depth
  int cg_iterations = 0;
  TemperatureReport monitor;
};

// state carries the end-of-step reference map and plastic distortion, the
// previous enthalpy and temperature. Conductivity is frozen at the previous
// temperature. Throws NegativeEnthalpy when the recovered temperature falls
// below settings.theta_floor.
HeatStepResult heat_step(const StateFields& state, HeatSources sources, const Physics& physics,
                         const SolverSettings& settings, double dt, const VectorField& advecting_velocity,
                         double t = 0.0);

// Recovers the temperature field from the enthalpy of a state.
ScalarField temperature_from_enthalpy(const StateFields& state, const Physics& physics);

}  // namespace eplast
