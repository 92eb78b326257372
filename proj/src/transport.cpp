#include "eplast/transport.hpp"

#include <sstream>

#include "eplast/error.hpp"

namespace eplast {

void zero_boundary(VectorField& v) {
  const int nx = v.nx(), ny = v.ny();
  for (int i = -1; i <= nx; ++i) {
    v(i, -1) = {}; v(i, 0) = {}; v(i, ny - 1) = {}; v(i, ny) = {};
  }
  for (int j = -1; j <= ny; ++j) {
    v(-1, j) = {}; v(0, j) = {}; v(nx - 1, j) = {}; v(nx, j) = {};
  }
}

StateFields apply_boundary_conditions(StateFields state) {
  zero_boundary(state.v);
  return state;
}

TensorField reference_gradient(const VectorField& xi) { return gradient(xi, Ghost::stored); }

void check_cfl(const VectorField& v, double dt, double cap) {
  const double c = cfl_number(v, dt);
  if (c > cap) {
    std::ostringstream os;
    os << "CFL number " << c << " exceeds cap " << cap;
    throw Error(ErrorKind::cfl_violation, os.str());
  }
}

VectorField advect_reference_map(const VectorField& xi, const VectorField& v, double dt, double cfl_cap) {
  check_cfl(v, dt, cfl_cap);
  return semi_lagrangian(xi, v, dt);
}

TensorField transport_plastic_distortion(const TensorField& Fp, const VectorField& v, double dt,
                                         double cfl_cap) {
  check_cfl(v, dt, cfl_cap);
  return semi_lagrangian(Fp, v, dt);
}

TensorField plastic_exponential_update(const TensorField& Fp, const TensorField& Lp, double dt) {
  TensorField out = Fp;
  for (int j = 0; j < Fp.ny(); ++j)
    for (int i = 0; i < Fp.nx(); ++i) {
      const Tensor2& L = Lp(i, j);
      if (std::abs(trace(L)) > 1e-10 * std::max(norm(L), 1e-300)) {
        std::ostringstream os;
        os << "tr Lp = " << trace(L) << " at cell (" << i << ", " << j << ")";
        throw Error(ErrorKind::non_deviatoric_rate, os.str());
      }
    }
  parallel_rows(Fp.ny(), [&](int j) {
    for (int i = 0; i < Fp.nx(); ++i) out(i, j) = expm(dt * Lp(i, j)) * Fp(i, j);
  });
  return out;
}

TensorField advect_plastic_distortion(const TensorField& Fp, const VectorField& v, const TensorField& Lp,
                                      double dt, double cfl_cap) {
  return plastic_exponential_update(transport_plastic_distortion(Fp, v, dt, cfl_cap), Lp, dt);
}

TensorField renormalize_isochoric(const TensorField& Fp) {
  TensorField out = Fp;
  for (int j = 0; j < Fp.ny(); ++j)
    for (int i = 0; i < Fp.nx(); ++i)
      if (!(det(Fp(i, j)) > 0.0)) {
        std::ostringstream os;
        os << "det Fp = " << det(Fp(i, j)) << " at cell (" << i << ", " << j << ")";
        throw Error(ErrorKind::non_positive_determinant, os.str());
      }
  parallel_rows(Fp.ny(), [&](int j) {
    for (int i = 0; i < Fp.nx(); ++i) {
      const double d = det(Fp(i, j));
      if (d != 1.0) out(i, j) = (1.0 / std::sqrt(d)) * Fp(i, j);
    }
  });
  return out;
}

double max_isochoric_defect(const TensorField& Fp) {
  double m = 0.0;
  for (int j = 0; j < Fp.ny(); ++j)
    for (int i = 0; i < Fp.nx(); ++i) m = std::max(m, std::abs(det(Fp(i, j)) - 1.0));
  return m;
}

ScalarField derived_density(const VectorField& xi, const DensityMap& rho_R) {
  const TensorField G = reference_gradient(xi);
  ScalarField rho(xi.grid());
  for (int j = 0; j < xi.ny(); ++j)
    for (int i = 0; i < xi.nx(); ++i)
      if (!(det(G(i, j)) > 0.0)) {
        std::ostringstream os;
        os << "det grad xi = " << det(G(i, j)) << " at cell (" << i << ", " << j << ")";
        throw Error(ErrorKind::non_positive_determinant, os.str());
      }
  parallel_rows(xi.ny(), [&](int j) {
    for (int i = 0; i < xi.nx(); ++i) rho(i, j) = rho_R(to_point(xi(i, j))) * det(G(i, j));
  });
  return rho;
}

ScalarField derived_density(const VectorField& xi, const MaterialModel& m) {
  return derived_density(xi, [&m](const Point& X) { return m.density_at(X); });
}

ScalarField cell_average_density(const VectorField& xi, const DensityMap& rho_R) {
  static constexpr double node[4] = {0.0694318442029737, 0.3300094782075719, 0.6699905217924281, 0.9305681557970263};
  static constexpr double weight[4] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731, 0.1739274225687269};
  const Grid& g = xi.grid();
  auto corner = [&](int i, int j) { return 0.25 * (xi(i - 1, j - 1) + xi(i, j - 1) + xi(i - 1, j) + xi(i, j)); };
  ScalarField rho(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 a = corner(i, j), b = corner(i + 1, j), c = corner(i, j + 1), d = corner(i + 1, j + 1);
      double m = 0.0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
          const double u = node[p], v = node[q];
          const Vec2 X = (1 - u) * (1 - v) * a + u * (1 - v) * b + (1 - u) * v * c + u * v * d;
          const Vec2 du = (1 - v) * (b - a) + v * (d - c), dv = (1 - u) * (c - a) + u * (d - b);
          const double jac = du.x * dv.y - du.y * dv.x;
          if (!(jac > 0.0)) {
            std::ostringstream os;
            os << "cell image folds at cell (" << i << ", " << j << ")";
            throw Error(ErrorKind::non_positive_determinant, os.str());
          }
          m += weight[p] * weight[q] * rho_R(to_point(X)) * jac;
        }
      // the unit square maps onto the image; divide by the cell volume
      rho(i, j) = m / g.cell_volume();
    }
  });
  return rho;
}

ScalarField cell_average_density(const VectorField& xi, const MaterialModel& m) {
  return cell_average_density(xi, [&m](const Point& X) { return m.density_at(X); });
}

double derived_mass(const VectorField& xi, const MaterialModel& m) {
  const ScalarField rho = cell_average_density(xi, m);
  return integrate(xi.grid(), [&](int i, int j) { return rho(i, j); });
}

double continuity_residual(const ScalarField& rho_before, const ScalarField& rho_after, const VectorField& v,
                           double dt, Ghost g) {
  VectorField flux(v.grid());
  for (int j = 0; j < v.ny(); ++j)
    for (int i = 0; i < v.nx(); ++i) flux(i, j) = rho_before(i, j) * v(i, j);
  const ScalarField div = divergence(flux, g);
  return integrate(v.grid(), [&](int i, int j) {
    return std::abs((rho_after(i, j) - rho_before(i, j)) / dt + div(i, j));
  });
}

TensorField elastic_strain_field(const TensorField& Fp, const TensorField& grad_xi) {
  TensorField Fe(Fp.grid());
  parallel_rows(Fp.ny(), [&](int j) {
    for (int i = 0; i < Fp.nx(); ++i) Fe(i, j) = elastic_strain(Fp(i, j), grad_xi(i, j));
  });
  return Fe;
}

}  // namespace eplast
