#include "eplast/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "eplast/mechanics.hpp"
#include "eplast/scenarios.hpp"

namespace eplast {

namespace {

StepDiagnostics initial_diagnostics(const StateFields& s, const SolverConfig& c) {
  StepDiagnostics d;
  d.energy = state_energies(s, c.physics, 0.0);
  d.temperature = temperature_nonnegativity_monitor(s.theta, c.physics.material.alpha);
  d.isochoric_defect = max_isochoric_defect(s.Fp);
  d.cfl = cfl_number(s.v, c.dt);
  return d;
}

}  // namespace

Simulator::Simulator(SolverConfig config) : Simulator(config, initial_state(config)) {}

Simulator::Simulator(SolverConfig config, StateFields initial)
    : config_(std::move(config)), state_(std::move(initial)), last_(initial_diagnostics(state_, config_)) {}

const StepDiagnostics& Simulator::step() {
  const Physics& ph = config_.physics;
  const SolverSettings& ss = config_.solver;
  const double dt = config_.dt;
  const double t = last_.energy.t;
  const Grid& g = state_.grid();

  check_cfl(state_.v, dt, ss.cfl_cap);

  // Transport with the old velocity.
  StateFields mid = state_;
  mid.xi = advect_reference_map(state_.xi, state_.v, dt, ss.cfl_cap);
  mid.Fp = transport_plastic_distortion(state_.Fp, state_.v, dt, ss.cfl_cap);

  const MomentumResult mom = momentum_step(mid, ph, ss, dt);
  const FlowRuleResult flow = flow_rule_step(mid, ph, ss);

  HeatSources sources;
  sources.dissipative = dissipation_density(mid, mom.v, flow.Lp, ph);
  sources.adiabatic = adiabatic_power(mid, ph, gradient(mom.v, Ghost::zero), flow.Lp);

  const TensorField Fp_exp = plastic_exponential_update(mid.Fp, flow.Lp, dt);
  double drift = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) drift = std::max(drift, std::abs(det(Fp_exp(i, j)) / det(mid.Fp(i, j)) - 1.0));

  StateFields next = mid;
  next.v = mom.v;
  next.Fp = renormalize_isochoric(Fp_exp);
  const double dissipation = integrate(g, [&](int i, int j) { return sources.dissipative(i, j); });
  const double exchange = -integrate(g, [&](int i, int j) { return sources.adiabatic(i, j); });
  const ScalarField rho_g = gravity_density(mid.xi, ph);
  const double gravity = integrate(g, [&](int i, int j) { return rho_g(i, j) * dot(ph.gravity, mom.v(i, j)); });

  HeatStepResult heat = heat_step(next, std::move(sources), ph, ss, dt, state_.v, t);
  next.w = std::move(heat.w);
  next.theta = std::move(heat.theta);

  StepDiagnostics d;
  d.step = last_.step + 1;
  d.energy = state_energies(next, ph, t + dt);
  d.energy.dissipation_rate = dissipation;
  d.energy.adiabatic_exchange = exchange;
  d.energy.gravity_power = gravity;
  d.energy.boundary_heat_in = heat.boundary_heat_in;
  close_balances(last_.energy, d.energy, dt, config_.audit);
  d.temperature = heat.monitor;
  d.exponential_drift = drift;
  d.isochoric_defect = max_isochoric_defect(next.Fp);
  d.max_plastic_rate = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) d.max_plastic_rate = std::max(d.max_plastic_rate, norm(flow.Lp(i, j)));
  d.mean_plastic_rate = integrate(g, [&](int i, int j) { return norm(flow.Lp(i, j)); }) / (g.lx * g.ly);
  d.cfl = cfl_number(next.v, dt);
  d.cg_momentum = mom.cg_iterations;
  d.cg_flow = flow.cg_iterations;
  d.cg_heat = heat.cg_iterations;
  d.flow_iterations = flow.iterations;
  d.flow_residual = flow.residual;

  state_ = std::move(next);
  last_ = d;
  return last_;
}

}  // namespace eplast
