#include "eplast/audit.hpp"

#include <cmath>

namespace eplast {

bool EnergyReport::all_finite() const {
  for (double v : {t, kinetic, stored, hardening, heat, dissipation_rate, gravity_power, boundary_heat_in,
                   adiabatic_exchange, mech_residual, total_residual, mech_residual_rel, total_residual_rel})
    if (!std::isfinite(v)) return false;
  return true;
}

EnergyReport state_energies(const StateFields& state, const Physics& physics, double t) {
  const Grid& g = state.grid();
  const MaterialModel& m = physics.material;
  const Kinematics kin = kinematics(state.xi, state.Fp);
  const ScalarField rho = derived_density(state.xi, m);
  EnergyReport r;
  r.t = t;
  r.kinetic = integrate(g, [&](int i, int j) { return 0.5 * rho(i, j) * dot(state.v(i, j), state.v(i, j)); });
  r.stored = integrate(g, [&](int i, int j) {
    const Tensor2& Fe = kin.Fe(i, j);
    double phi = stored_energy(m, to_point(state.xi(i, j)), Fe);
    if (physics.cutoff.enabled) phi *= cutoff_pi(Fe, physics.cutoff);
    return kin.jacobian_inv(i, j) * phi;
  });
  r.hardening = integrate(g, [&](int i, int j) {
    return kin.jacobian_inv(i, j) * hardening_energy(m, to_point(state.xi(i, j)), state.Fp(i, j)).energy;
  });
  r.heat = integrate(g, [&](int i, int j) { return state.w(i, j); });
  return r;
}

double mechanical_balance_residual(const EnergyReport& before, const EnergyReport& after, double dt) {
  return std::abs((after.mechanical() - before.mechanical()) / dt + after.dissipation_rate - after.gravity_power -
                  after.adiabatic_exchange);
}

double total_balance_residual(const EnergyReport& before, const EnergyReport& after, double dt,
                              bool count_hardening) {
  return std::abs((after.total(count_hardening) - before.total(count_hardening)) / dt - after.boundary_heat_in -
                  after.gravity_power);
}

void close_balances(const EnergyReport& before, EnergyReport& after, double dt, const AuditSettings& settings) {
  after.mech_residual = mechanical_balance_residual(before, after, dt);
  after.total_residual = total_balance_residual(before, after, dt, settings.count_hardening_in_total);
  const double scale = std::max({after.dissipation_rate, std::abs(after.gravity_power), settings.eps_scale});
  after.mech_residual_rel = after.mech_residual / scale;
  after.total_residual_rel = after.total_residual / scale;
}

KinematicReport kinematic_identity_suite(const StateFields& before, const StateFields& after, const VectorField& v,
                                         double dt, const MaterialModel& material) {
  const Grid& g = v.grid();
  const double area = g.lx * g.ly;
  const TensorField Gb = reference_gradient(before.xi), Ga = reference_gradient(after.xi);
  TensorField Fb(g), Fa(g);
  ScalarField Jb(g), Ja(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Fb(i, j) = deformation_gradient(Gb(i, j));
      Fa(i, j) = deformation_gradient(Ga(i, j));
      Jb(i, j) = det(Fb(i, j));
      Ja(i, j) = det(Fa(i, j));
    }
  const TensorField grad_v = gradient(v);
  const ScalarField div_v = divergence(v);
  const HyperField grad_F = gradient(Fb);
  const VectorField grad_J = gradient(Jb);

  KinematicReport r;
  r.deformation = integrate(g, [&](int i, int j) {
    Tensor2 adv(2);
    const Tensor3& dF = grad_F(i, j);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) adv(a, b) = v(i, j).x * dF(a, b, 0) + v(i, j).y * dF(a, b, 1);
    return norm((1.0 / dt) * (Fa(i, j) - Fb(i, j)) + adv - grad_v(i, j) * Fb(i, j));
  }) / area;
  r.jacobian = integrate(g, [&](int i, int j) {
    return std::abs((Ja(i, j) - Jb(i, j)) / dt + dot(v(i, j), grad_J(i, j)) - Jb(i, j) * div_v(i, j));
  }) / area;
  r.continuity = continuity_residual(derived_density(before.xi, material), derived_density(after.xi, material), v, dt) /
                 area;
  return r;
}

}  // namespace eplast
