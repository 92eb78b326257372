#include "eplast/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eplast/error.hpp"

namespace eplast {

ScalarField adiabatic_power(const StateFields& state, const Physics& physics, const TensorField& grad_v,
                            const TensorField& Lp) {
  const Grid& g = state.grid();
  const Kinematics kin = kinematics(state.xi, state.Fp);
  ScalarField out(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const Tensor2& Fe = kin.Fe(i, j);
      const double theta = constitutive_temperature(state.theta(i, j));
      Tensor2 dgamma = thermal_energy(physics.material, to_point(state.xi(i, j)), Fe, theta).d_fe;
      if (physics.cutoff.enabled) dgamma *= cutoff_pi(Fe, physics.cutoff);
      const Tensor2 rate = grad_v(i, j) * Fe - Fe * Lp(i, j);
      out(i, j) = kin.jacobian_inv(i, j) * contract(dgamma, rate);
    }
  });
  return out;
}

TemperatureReport temperature_nonnegativity_monitor(const ScalarField& theta, double alpha) {
  const Grid& g = theta.grid();
  TemperatureReport r;
  r.min_theta = std::numeric_limits<double>::infinity();
  int negative = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      r.min_theta = std::min(r.min_theta, theta(i, j));
      if (theta(i, j) < 0.0) ++negative;
    }
  r.fraction_negative = static_cast<double>(negative) / g.cells();
  r.negative_norm = integrate(g, [&](int i, int j) {
    const double neg = std::min(theta(i, j), 0.0);
    return neg < 0.0 ? std::pow(-neg, 1.0 + alpha) : 0.0;
  });
  return r;
}

double raw_temperature(const MaterialModel& m, const Point& X, const Tensor2& Fe, double w) {
  if (w >= 0.0) return invert_enthalpy(m, X, Fe, w);
  return w / heat_internal_energy(m, X, Fe, 0.0).dw_dtheta;
}

ScalarField temperature_from_enthalpy(const StateFields& state, const Physics& physics) {
  const Kinematics kin = kinematics(state.xi, state.Fp);
  ScalarField theta(state.grid());
  parallel_rows(state.grid().ny, [&](int j) {
    for (int i = 0; i < state.grid().nx; ++i)
      theta(i, j) = raw_temperature(physics.material, to_point(state.xi(i, j)), kin.Fe(i, j), state.w(i, j));
  });
  return theta;
}

namespace {

struct BoundaryFace {
  int axis;      // normal axis
  Vec2 point;    // face centre
  double scale;  // face length / cell volume
};

// Boundary faces of cell (i, j); corner cells own two.
int boundary_faces(const Grid& g, int i, int j, BoundaryFace out[2]) {
  int n = 0;
  const Vec2 c = g.center(i, j);
  if (i == 0) out[n++] = {0, {0.0, c.y}, 1.0 / g.hx()};
  if (i == g.nx - 1) out[n++] = {0, {g.lx, c.y}, 1.0 / g.hx()};
  if (j == 0) out[n++] = {1, {c.x, 0.0}, 1.0 / g.hy()};
  if (j == g.ny - 1) out[n++] = {1, {c.x, g.ly}, 1.0 / g.hy()};
  return n;
}

// sum over faces of kappa_f (theta_i - theta_nb) / h^2
ScalarField conduction_operator(const ScalarField& theta, const ScalarField& kappa) {
  const Grid& g = theta.grid();
  const double ix = 1.0 / (g.hx() * g.hx()), iy = 1.0 / (g.hy() * g.hy());
  ScalarField out(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const double t = theta(i, j), k = kappa(i, j);
      double s = 0.0;
      if (i > 0) s += 0.5 * (k + kappa(i - 1, j)) * (t - theta(i - 1, j)) * ix;
      if (i < g.nx - 1) s += 0.5 * (k + kappa(i + 1, j)) * (t - theta(i + 1, j)) * ix;
      if (j > 0) s += 0.5 * (k + kappa(i, j - 1)) * (t - theta(i, j - 1)) * iy;
      if (j < g.ny - 1) s += 0.5 * (k + kappa(i, j + 1)) * (t - theta(i, j + 1)) * iy;
      out(i, j) = s;
    }
  });
  return out;
}

}  // namespace

ScalarField donor_cell_transport(const ScalarField& w, const VectorField& v, double dt) {
  const Grid& g = w.grid();
  const double rx = dt / g.hx(), ry = dt / g.hy();
  // Upwind flux through the face between a and b with face speed u.
  auto flux = [](double u, double a, double b) { return u > 0.0 ? u * a : u * b; };
  ScalarField out(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      double net = 0.0;
      if (i < g.nx - 1) net += rx * flux(0.5 * (v(i, j).x + v(i + 1, j).x), w(i, j), w(i + 1, j));
      if (i > 0) net -= rx * flux(0.5 * (v(i - 1, j).x + v(i, j).x), w(i - 1, j), w(i, j));
      if (j < g.ny - 1) net += ry * flux(0.5 * (v(i, j).y + v(i, j + 1).y), w(i, j), w(i, j + 1));
      if (j > 0) net -= ry * flux(0.5 * (v(i, j - 1).y + v(i, j).y), w(i, j - 1), w(i, j));
      out(i, j) = w(i, j) - net;
    }
  });
  return out;
}

HeatStepResult heat_step(const StateFields& state, HeatSources sources, const Physics& physics,
                         const SolverSettings& settings, double dt, const VectorField& advecting_velocity,
                         double t) {
  const Grid& g = state.grid();
  const MaterialModel& m = physics.material;
  const BoundaryFlux& flux = physics.boundary.heat;
  const Kinematics kin = kinematics(state.xi, state.Fp);

  // Conservative transport (advection plus compression), then explicit sources.
  const ScalarField transported = donor_cell_transport(state.w, advecting_velocity, dt);
  const ScalarField div_v = divergence(advecting_velocity, Ghost::zero);
  sources.compression = ScalarField(g);
  ScalarField w_src(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      sources.compression(i, j) = -state.w(i, j) * div_v(i, j);
      w_src(i, j) = transported(i, j) + dt * (sources.dissipative(i, j) + sources.adiabatic(i, j));
    }

  // Linearized backward conduction around the post-source temperature.
  ScalarField theta_src(g), capacity(g), kappa(g), diag_extra(g), rhs_extra(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const Point X = to_point(state.xi(i, j));
      const double th = raw_temperature(m, X, kin.Fe(i, j), w_src(i, j));
      const double thc = constitutive_temperature(th);
      theta_src(i, j) = th;
      capacity(i, j) = heat_internal_energy(m, X, kin.Fe(i, j), thc).dw_dtheta;
      kappa(i, j) = conductivity(m, X, kin.Fe(i, j), constitutive_temperature(state.theta(i, j)));
      BoundaryFace faces[2];
      const int nf = boundary_faces(g, i, j, faces);
      double dsum = 0.0, rsum = 0.0;
      for (int f = 0; f < nf; ++f) {
        const Point xf = to_point(faces[f].point);
        const double h0 = flux.flux(t, xf, thc), dh = flux.dflux_dtheta(t, xf, thc);
        dsum -= faces[f].scale * dh;
        rsum += faces[f].scale * (h0 - dh * thc);
      }
      diag_extra(i, j) = dsum;
      rhs_extra(i, j) = rsum;
    }
  });

  const std::size_t n = static_cast<std::size_t>(g.cells());
  std::vector<double> b(n), x(n), inv_diag(n);
  const double ix = 1.0 / (g.hx() * g.hx()), iy = 1.0 / (g.hy() * g.hy());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
      const double thc = constitutive_temperature(theta_src(i, j));
      b[k] = capacity(i, j) / dt * thc + rhs_extra(i, j);
      x[k] = thc;
      double d = capacity(i, j) / dt + diag_extra(i, j);
      if (i > 0) d += 0.5 * (kappa(i, j) + kappa(i - 1, j)) * ix;
      if (i < g.nx - 1) d += 0.5 * (kappa(i, j) + kappa(i + 1, j)) * ix;
      if (j > 0) d += 0.5 * (kappa(i, j) + kappa(i, j - 1)) * iy;
      if (j < g.ny - 1) d += 0.5 * (kappa(i, j) + kappa(i, j + 1)) * iy;
      inv_diag[k] = 1.0 / d;
    }
  ScalarField scratch(g);
  const LinearOperator A = [&](std::span<const double> in, std::span<double> out) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) scratch(i, j) = in[static_cast<std::size_t>(j) * g.nx + i];
    const ScalarField lap = conduction_operator(scratch, kappa);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
        out[k] = (capacity(i, j) / dt + diag_extra(i, j)) * in[k] + lap(i, j);
      }
  };
  HeatStepResult result;
  result.cg_iterations = conjugate_gradient(A, inv_diag, b, x, settings.cg).iterations;

  ScalarField theta_new(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) theta_new(i, j) = x[static_cast<std::size_t>(j) * g.nx + i];
  const ScalarField lap = conduction_operator(theta_new, kappa);

  // Conservative update: sum(w) changes only by the boundary influx.
  ScalarField influx(g);
  result.w = ScalarField(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double bin = rhs_extra(i, j) - diag_extra(i, j) * theta_new(i, j);
      influx(i, j) = bin;
      result.w(i, j) = w_src(i, j) + dt * (bin - lap(i, j));
    }
  result.boundary_heat_in = integrate(g, [&](int i, int j) { return influx(i, j); });

  StateFields next = state;
  next.w = result.w;
  result.theta = temperature_from_enthalpy(next, physics);
  result.monitor = temperature_nonnegativity_monitor(result.theta, m.alpha);
  result.sources = std::move(sources);
  if (result.monitor.min_theta < settings.theta_floor) {
    std::ostringstream os;
    os << "recovered temperature " << result.monitor.min_theta << " below floor " << settings.theta_floor
       << "; negative fraction " << result.monitor.fraction_negative << ", L^(1+alpha) norm "
       << result.monitor.negative_norm;
    throw Error(ErrorKind::negative_enthalpy, os.str());
  }
  return result;
}

}  // namespace eplast
