#include "eplast/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eplast/error.hpp"

namespace eplast {

Kinematics kinematics(const VectorField& xi, const TensorField& Fp) {
  Kinematics k{reference_gradient(xi), TensorField(xi.grid()), ScalarField(xi.grid())};
  parallel_rows(xi.ny(), [&](int j) {
    for (int i = 0; i < xi.nx(); ++i) {
      k.Fe(i, j) = elastic_strain(Fp(i, j), k.grad_xi(i, j));
      const double J = det(k.Fe(i, j));
      if (!(J > 0.0)) {
        std::ostringstream os;
        os << "det Fe = " << J << " at cell (" << i << ", " << j << ")";
        throw Error(ErrorKind::non_positive_determinant, os.str());
      }
      k.jacobian_inv(i, j) = 1.0 / J;
    }
  });
  return k;
}

namespace {

std::size_t cell_index(const Grid& g, int i, int j) { return static_cast<std::size_t>(j) * g.nx + i; }

std::vector<double> pack(const VectorField& f) {
  const Grid& g = f.grid();
  std::vector<double> out(2 * static_cast<std::size_t>(g.cells()));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = 2 * cell_index(g, i, j);
      out[k] = f(i, j).x;
      out[k + 1] = f(i, j).y;
    }
  return out;
}

void unpack(std::span<const double> x, VectorField& f) {
  const Grid& g = f.grid();
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = 2 * cell_index(g, i, j);
      f(i, j) = {x[k], x[k + 1]};
    }
  });
}

constexpr int lp_slots[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

std::vector<double> pack(const TensorField& f) {
  const Grid& g = f.grid();
  std::vector<double> out(4 * static_cast<std::size_t>(g.cells()));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (int c = 0; c < 4; ++c) out[4 * cell_index(g, i, j) + c] = f(i, j)(lp_slots[c][0], lp_slots[c][1]);
  return out;
}

void unpack(std::span<const double> x, TensorField& f) {
  const Grid& g = f.grid();
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      Tensor2 t(2);
      for (int c = 0; c < 4; ++c) t(lp_slots[c][0], lp_slots[c][1]) = x[4 * cell_index(g, i, j) + c];
      f(i, j) = t;
    }
  });
}

double power_coefficient(double magnitude, double exponent) {
  if (exponent == 2.0) return 1.0;
  return magnitude > 0.0 ? std::pow(magnitude, exponent - 2.0) : 0.0;
}

// Lagged coefficients |e|^{p-2} and |grad e|^{p-2} of a velocity field.
struct ViscousCoefficients {
  ScalarField strain;
  ScalarField hyper;
};

ViscousCoefficients viscous_coefficients(const VectorField& v, const DissipationParams& d) {
  const Grid& g = v.grid();
  ViscousCoefficients c{ScalarField(g, 1.0), ScalarField(g, 1.0)};
  if (d.p == 2.0) return c;
  const TensorField e = sym_velocity_gradient(v, Ghost::zero);
  const HyperField ge = gradient(e, Ghost::mirror);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      c.strain(i, j) = power_coefficient(norm(e(i, j)), d.p);
      c.hyper(i, j) = power_coefficient(norm(ge(i, j)), d.p);
    }
  });
  return c;
}

// nu0 c0 e(u) - G_m^T(nu1 c1 G_m e(u)) before the outer transpose.
TensorField dissipative_stress(const VectorField& u, const DissipationParams& d, const ViscousCoefficients& c) {
  const Grid& g = u.grid();
  const TensorField e = sym_velocity_gradient(u, Ghost::zero);
  TensorField S(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) S(i, j) = (d.nu0 * c.strain(i, j)) * e(i, j);
  });
  if (d.nu1 > 0.0) {
    HyperField h = gradient(e, Ghost::mirror);
    parallel_rows(g.ny, [&](int j) {
      for (int i = 0; i < g.nx; ++i) h(i, j) *= d.nu1 * c.hyper(i, j);
    });
    const TensorField weak = gradient_transpose(h, Ghost::mirror);
    parallel_rows(g.ny, [&](int j) {
      for (int i = 0; i < g.nx; ++i) S(i, j) += weak(i, j);
    });
  }
  return S;
}

// (rho/dt) u + E^T S(u) with the boundary ring frozen at zero.
VectorField apply_momentum_operator(const VectorField& u, const ScalarField& rho, double dt,
                                    const DissipationParams& d, const ViscousCoefficients& c) {
  const Grid& g = u.grid();
  VectorField out = gradient_transpose(dissipative_stress(u, d, c), Ghost::zero);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = g.on_boundary(i, j) ? Vec2{} : (rho(i, j) / dt) * u(i, j) + out(i, j);
  });
  return out;
}

std::vector<double> momentum_inverse_diagonal(const ScalarField& rho, double dt, const DissipationParams& d,
                                              const ViscousCoefficients& c) {
  const Grid& g = rho.grid();
  std::vector<double> out(2 * static_cast<std::size_t>(g.cells()), 0.0);
  const double ax = 0.25 / (g.hx() * g.hx()), ay = 0.25 / (g.hy() * g.hy());
  const double hyper = 0.25 * (ax * ax + ay * ay) * 16.0 * 0.25;
  auto coeff = [&](int i, int j) { return (i < 0 || j < 0 || i >= g.nx || j >= g.ny) ? 0.0 : c.strain(i, j); };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (g.on_boundary(i, j)) continue;
      const double sx = coeff(i - 1, j) + coeff(i + 1, j), sy = coeff(i, j - 1) + coeff(i, j + 1);
      const double base = rho(i, j) / dt + d.nu1 * c.hyper(i, j) * hyper;
      const std::size_t k = 2 * cell_index(g, i, j);
      out[k] = 1.0 / (base + d.nu0 * (ax * sx + 0.5 * ay * sy));
      out[k + 1] = 1.0 / (base + d.nu0 * (0.5 * ax * sx + ay * sy));
    }
  return out;
}

double relative_norm(const VectorField& r, const VectorField& b) {
  const std::vector<double> rv = pack(r), bv = pack(b);
  const double bn = std::sqrt(dot(bv, bv));
  return bn > 0.0 ? std::sqrt(dot(rv, rv)) / bn : std::sqrt(dot(rv, rv));
}

VectorField subtract(const VectorField& a, const VectorField& b) {
  VectorField out(a.grid());
  for (int j = 0; j < a.ny(); ++j)
    for (int i = 0; i < a.nx(); ++i) out(i, j) = a(i, j) - b(i, j);
  return out;
}

}  // namespace

TensorField elastic_stress_field(const StateFields& state, const Kinematics& kin, const Physics& physics) {
  TensorField T(state.grid());
  parallel_rows(state.grid().ny, [&](int j) {
    for (int i = 0; i < state.grid().nx; ++i)
      T(i, j) = elastic_cauchy_stress(physics.material, to_point(state.xi(i, j)), kin.Fe(i, j),
                                      constitutive_temperature(state.theta(i, j)), physics.cutoff);
  });
  return T;
}

ScalarField gravity_density(const VectorField& xi, const Physics& physics) {
  const TensorField G = reference_gradient(xi);
  ScalarField rho(xi.grid());
  parallel_rows(xi.ny(), [&](int j) {
    for (int i = 0; i < xi.nx(); ++i) {
      const double d = physics.cutoff.enabled ? det_lambda(G(i, j), physics.cutoff) : det(G(i, j));
      rho(i, j) = physics.material.density_at(to_point(xi(i, j))) * d;
    }
  });
  return rho;
}

MomentumResult momentum_step(const StateFields& state, const Physics& physics, const SolverSettings& settings,
                             double dt) {
  const Grid& g = state.grid();
  const DissipationParams& d = physics.dissipation;
  const Kinematics kin = kinematics(state.xi, state.Fp);
  const ScalarField rho = derived_density(state.xi, physics.material);
  const ScalarField rho_g = gravity_density(state.xi, physics);

  MomentumResult result;
  result.work.stress = elastic_stress_field(state, kin, physics);
  result.work.momentum = VectorField(g);

  const VectorField elastic_force = gradient_transpose(result.work.stress, Ghost::zero);
  const TensorField grad_v = gradient(state.v, Ghost::zero);
  VectorField b(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 vn = state.v(i, j);
      result.work.momentum(i, j) = rho(i, j) * vn;
      if (g.on_boundary(i, j)) continue;
      const Vec2 convection = grad_v(i, j) * vn;
      b(i, j) = (rho(i, j) / dt) * vn - rho(i, j) * convection - elastic_force(i, j) + rho_g(i, j) * physics.gravity;
    }
  });
  const std::vector<double> bv = pack(b);

  VectorField v = state.v;
  zero_boundary(v);
  ViscousCoefficients coeff = viscous_coefficients(state.v, d);
  const bool linear = d.p == 2.0 || (d.nu0 == 0.0 && d.nu1 == 0.0);
  const int sweeps = linear ? 1 : std::max(1, settings.picard_momentum);
  double previous = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= sweeps; ++sweep) {
    if (sweep > 1) coeff = viscous_coefficients(v, d);
    const std::vector<double> inv_diag = momentum_inverse_diagonal(rho, dt, d, coeff);
    VectorField scratch(g);
    const LinearOperator A = [&](std::span<const double> x, std::span<double> y) {
      unpack(x, scratch);
      const std::vector<double> out = pack(apply_momentum_operator(scratch, rho, dt, d, coeff));
      std::copy(out.begin(), out.end(), y.begin());
    };
    std::vector<double> x = pack(v);
    result.cg_iterations += conjugate_gradient(A, inv_diag, bv, x, settings.cg).iterations;
    unpack(x, v);
    zero_boundary(v);
    result.picard_iterations = sweep;
    if (sweeps == 1) break;
    const ViscousCoefficients now = viscous_coefficients(v, d);
    const double r = relative_norm(subtract(apply_momentum_operator(v, rho, dt, d, now), b), b);
    if (r <= settings.picard_tolerance) break;
    if (r > previous) {
      std::ostringstream os;
      os << "momentum Picard residual increased from " << previous << " to " << r << " at sweep " << sweep;
      throw Error(ErrorKind::no_convergence, os.str());
    }
    previous = r;
  }

  result.work.dissipative = dissipative_stress(v, d, coeff);
  result.work.residual = subtract(apply_momentum_operator(v, rho, dt, d, coeff), b);
  check_cfl(v, dt, settings.cfl_cap);
  result.v = std::move(v);
  return result;
}

namespace {

struct FlowCell {
  ScalarField weight;  // J^-1 M(theta)
  TensorField rhs;     // J^-1 dev(Mandel)
};

FlowCell flow_cell_data(const StateFields& state, const Kinematics& kin, const Physics& physics) {
  const Grid& g = state.grid();
  FlowCell fc{ScalarField(g), TensorField(g)};
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const double theta = constitutive_temperature(state.theta(i, j));
      const Point X = to_point(state.xi(i, j));
      const Tensor2 m = mandel_driving_force(physics.material, X, kin.Fe(i, j), state.Fp(i, j), theta, physics.cutoff);
      const double Jinv = kin.jacobian_inv(i, j);
      fc.weight(i, j) = Jinv * physics.material.viscosity(theta);
      fc.rhs(i, j) = Jinv * m;
    }
  });
  return fc;
}

ScalarField flow_coefficients(const TensorField& Lp, double q) {
  ScalarField c(Lp.grid(), 1.0);
  if (q == 2.0) return c;
  const HyperField gl = gradient(Lp, Ghost::mirror);
  for (int j = 0; j < Lp.ny(); ++j)
    for (int i = 0; i < Lp.nx(); ++i) c(i, j) = power_coefficient(norm(gl(i, j)), q);
  return c;
}

TensorField apply_flow_operator(const TensorField& L, const FlowCell& fc, double nu2, const ScalarField& c) {
  const Grid& g = L.grid();
  HyperField h = gradient(L, Ghost::mirror);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) h(i, j) *= nu2 * c(i, j);
  });
  TensorField out = gradient_transpose(h, Ghost::mirror);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) out(i, j) += fc.weight(i, j) * L(i, j);
  });
  return out;
}

// Derivative of apply_flow_operator at the state with gradient gl and
// coefficients c = |gl|^{q-2}, applied to d.
TensorField apply_flow_jacobian(const TensorField& d, const FlowCell& fc, double nu2, const ScalarField& c,
                                const HyperField& gl, double q) {
  const Grid& g = d.grid();
  HyperField h = gradient(d, Ghost::mirror);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const Tensor3& s = gl(i, j);
      const double n2 = contract(s, s);
      Tensor3 t = c(i, j) * h(i, j);
      if (n2 > 0.0) t += ((q - 2.0) * c(i, j) / n2 * contract(s, h(i, j))) * s;
      h(i, j) = nu2 * t;
    }
  });
  TensorField out = gradient_transpose(h, Ghost::mirror);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) out(i, j) += fc.weight(i, j) * d(i, j);
  });
  return out;
}

double flow_residual(const TensorField& L, const FlowCell& fc, double nu2, double q) {
  const TensorField r = apply_flow_operator(L, fc, nu2, flow_coefficients(L, q));
  std::vector<double> rr(static_cast<std::size_t>(L.grid().cells())), bb(rr.size());
  for (int j = 0; j < L.ny(); ++j)
    for (int i = 0; i < L.nx(); ++i) {
      const Tensor2 diff = r(i, j) - fc.rhs(i, j);
      rr[static_cast<std::size_t>(j) * L.nx() + i] = contract(diff, diff);
      bb[static_cast<std::size_t>(j) * L.nx() + i] = contract(fc.rhs(i, j), fc.rhs(i, j));
    }
  const double bn = std::sqrt(pairwise_sum(bb));
  const double rn = std::sqrt(pairwise_sum(rr));
  return bn > 0.0 ? rn / bn : rn;
}

}  // namespace

FlowRuleResult flow_rule_step(const StateFields& state, const Physics& physics, const SolverSettings& settings) {
  const Grid& g = state.grid();
  const double nu2 = physics.dissipation.nu2, q = physics.dissipation.q;
  const Kinematics kin = kinematics(state.xi, state.Fp);
  const FlowCell fc = flow_cell_data(state, kin, physics);

  FlowRuleResult result;
  result.Lp = TensorField(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) result.Lp(i, j) = (1.0 / fc.weight(i, j)) * fc.rhs(i, j);
  });

  if (nu2 > 0.0) {
    const double ax = 0.25 / (g.hx() * g.hx()), ay = 0.25 / (g.hy() * g.hy());
    auto jacobi = [&](const ScalarField& c) {
      std::vector<double> inv_diag(4 * static_cast<std::size_t>(g.cells()));
      auto coeff = [&](int i, int j) { return (i < 0 || j < 0 || i >= g.nx || j >= g.ny) ? 0.0 : c(i, j); };
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const double diag = fc.weight(i, j) + nu2 * (ax * (coeff(i - 1, j) + coeff(i + 1, j)) +
                                                       ay * (coeff(i, j - 1) + coeff(i, j + 1)));
          for (int k = 0; k < 4; ++k) inv_diag[4 * cell_index(g, i, j) + k] = 1.0 / diag;
        }
      return inv_diag;
    };
    TensorField scratch(g);

    if (q == 2.0) {
      // Linear: one solve.
      const ScalarField c(g, 1.0);
      const LinearOperator A = [&](std::span<const double> x, std::span<double> y) {
        unpack(x, scratch);
        const std::vector<double> out = pack(apply_flow_operator(scratch, fc, nu2, c));
        std::copy(out.begin(), out.end(), y.begin());
      };
      std::vector<double> x = pack(result.Lp);
      result.cg_iterations += conjugate_gradient(A, jacobi(c), pack(fc.rhs), x, settings.cg).iterations;
      unpack(x, result.Lp);
      result.iterations = 1;
      result.residual = flow_residual(result.Lp, fc, nu2, q);
    } else {
      // Newton on the convex flow potential with a backtracking line search
      // that keeps the residual monotone.
      double r = flow_residual(result.Lp, fc, nu2, q);
      for (int sweep = 1; r > settings.picard_tolerance; ++sweep) {
        if (sweep > settings.flow_iterations) {
          std::ostringstream os;
          os << "flow-rule Newton residual " << r << " above tolerance " << settings.picard_tolerance << " after "
             << settings.flow_iterations << " iterations";
          throw Error(ErrorKind::no_convergence, os.str());
        }
        const ScalarField c = flow_coefficients(result.Lp, q);
        const HyperField gl = gradient(result.Lp, Ghost::mirror);
        const TensorField F = apply_flow_operator(result.Lp, fc, nu2, c);
        std::vector<double> minus_f = pack(F);
        const std::vector<double> b = pack(fc.rhs);
        for (std::size_t k = 0; k < minus_f.size(); ++k) minus_f[k] = b[k] - minus_f[k];
        const LinearOperator A = [&](std::span<const double> x, std::span<double> y) {
          unpack(x, scratch);
          const std::vector<double> out = pack(apply_flow_jacobian(scratch, fc, nu2, c, gl, q));
          std::copy(out.begin(), out.end(), y.begin());
        };
        std::vector<double> step(minus_f.size(), 0.0);
        result.cg_iterations += conjugate_gradient(A, jacobi(c), minus_f, step, settings.cg).iterations;
        TensorField delta(g);
        unpack(step, delta);

        double t = 1.0;
        for (;;) {
          TensorField trial = result.Lp;
          parallel_rows(g.ny, [&](int j) {
            for (int i = 0; i < g.nx; ++i) trial(i, j) += t * delta(i, j);
          });
          const double rt = flow_residual(trial, fc, nu2, q);
          if (rt < r) {
            result.Lp = std::move(trial);
            r = rt;
            break;
          }
          t *= 0.5;
          if (t < 1.0 / 1024.0) {
            std::ostringstream os;
            os << "flow-rule Newton line search failed at residual " << r << " in iteration " << sweep;
            throw Error(ErrorKind::no_convergence, os.str());
          }
        }
        result.iterations = sweep;
      }
      result.residual = r;
    }
  }

  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) result.Lp(i, j) = dev(result.Lp(i, j));
  });
  return result;
}

ScalarField dissipation_density(const StateFields& state, const VectorField& v, const TensorField& Lp,
                                const Physics& physics) {
  const Grid& g = state.grid();
  const DissipationParams& d = physics.dissipation;
  const Kinematics kin = kinematics(state.xi, state.Fp);
  const TensorField e = sym_velocity_gradient(v, Ghost::zero);
  const HyperField ge = gradient(e, Ghost::mirror);
  const HyperField gl = gradient(Lp, Ghost::mirror);
  ScalarField xi_d(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const double theta = constitutive_temperature(state.theta(i, j));
      const double plastic = kin.jacobian_inv(i, j) * physics.material.viscosity(theta) * contract(Lp(i, j), Lp(i, j));
      xi_d(i, j) = d.nu0 * std::pow(norm(e(i, j)), d.p) + d.nu1 * std::pow(norm(ge(i, j)), d.p) +
                   d.nu2 * std::pow(norm(gl(i, j)), d.q) + plastic;
    }
  });
  return xi_d;
}

}  // namespace eplast
