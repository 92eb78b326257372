#include <gtest/gtest.h>

#include "eplast/error.hpp"
#include "eplast/scenarios.hpp"
#include "eplast/transport.hpp"
#include "support.hpp"

using namespace eplast;
using eplast::testing::Gen;
using eplast::testing::scalar_field;
using eplast::testing::vector_field;

namespace {

constexpr double pi = 3.14159265358979323846;

VectorField identity_map(const Grid& g, double scale = 1.0) {
  return vector_field(g, [scale](Vec2 p) { return scale * p; });
}

VectorField swirl(const Grid& g, double a) {
  VectorField v = vector_field(g, [a](Vec2 p) {
    const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
    return Vec2{a * sx * sx * std::sin(2 * pi * p.y), -a * std::sin(2 * pi * p.x) * sy * sy};
  });
  zero_boundary(v);
  return v;
}

double mass(const VectorField& xi) {
  const ScalarField rho = derived_density(xi, [](const Point&) { return 1.0; });
  return integrate(xi.grid(), [&](int i, int j) { return rho(i, j); });
}

}  // namespace

TEST(Density, IdentityAndCompression) {
  const Grid g{.nx = 8, .ny = 8};
  const ScalarField r1 = derived_density(identity_map(g), [](const Point&) { return 1.0; });
  const ScalarField r4 = derived_density(identity_map(g, 2.0), [](const Point&) { return 1.0; });
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      EXPECT_NEAR(r1(i, j), 1.0, 1e-14);
      EXPECT_NEAR(r4(i, j), 4.0, 1e-13);
    }
}

TEST(Density, RecomputationIsBitIdentical) {
  SolverConfig c = scenario_defaults("uniaxial_compression");
  c.grid = {.nx = 16, .ny = 16};
  const VectorField xi = initial_reference_map(c);
  EXPECT_EQ(derived_density(xi, c.physics.material), derived_density(xi, c.physics.material));
}

TEST(Density, RejectsFoldedMap) {
  const Grid g{.nx = 8, .ny = 8};
  const VectorField xi = vector_field(g, [](Vec2 p) { return Vec2{-p.x, p.y}; });
  try {
    derived_density(xi, [](const Point&) { return 1.0; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_positive_determinant);
  }
}

TEST(Density, MassConstantUnderTransport) {
  SolverConfig c = scenario_defaults("uniaxial_compression");
  c.grid = {.nx = 32, .ny = 32};
  VectorField xi = initial_reference_map(c);
  const VectorField v = swirl(c.grid, 0.25);
  const double m0 = mass(xi);
  for (int n = 0; n < 200; ++n) xi = advect_reference_map(xi, v, 0.5 * c.grid.hx());
  EXPECT_NEAR(mass(xi), m0, 1e-12 * m0);
}

TEST(Density, CellAverageMatchesPointValuesForSmoothMaps) {
  const Grid g{.nx = 32, .ny = 32};
  const VectorField xi = vector_field(g, [](Vec2 p) { return Vec2{p.x + 0.05 * std::sin(pi * p.y), p.y}; });
  const ScalarField a = cell_average_density(xi, [](const Point&) { return 1.0; });
  const ScalarField b = derived_density(xi, [](const Point&) { return 1.0; });
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) EXPECT_NEAR(a(i, j), b(i, j), 1e-3);
  EXPECT_NEAR(derived_mass(identity_map(g), MaterialModel{}), 1.0, 1e-14);
}

TEST(Density, CheckerboardMassConstantUnderTransport) {
  // Point values of a sharply varying rho_R drift with the quadrature error;
  // the cell-image integral does not.
  SolverConfig c = scenario_defaults("inhomogeneous_checkerboard");
  c.grid = {.nx = 32, .ny = 32};
  VectorField xi = initial_reference_map(c);
  const VectorField v = swirl(c.grid, 0.5);
  const double m0 = derived_mass(xi, c.physics.material);
  for (int n = 0; n < 100; ++n) xi = advect_reference_map(xi, v, 0.5 * c.grid.hx());
  EXPECT_NEAR(derived_mass(xi, c.physics.material), m0, 1e-8 * m0);
}

TEST(Continuity, StaticStateHasZeroResidual) {
  const Grid g{.nx = 16, .ny = 16};
  const ScalarField rho = scalar_field(g, [](Vec2 p) { return 1 + p.x * p.y; });
  EXPECT_EQ(continuity_residual(rho, rho, VectorField(g), 0.01), 0.0);
}

TEST(Continuity, TranslationResidualConverges) {
  const Vec2 u{0.6, 0.3};
  auto bump = [](Vec2 p) { return 1.0 + std::exp(-40 * ((p.x - 0.5) * (p.x - 0.5) + (p.y - 0.5) * (p.y - 0.5))); };
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const Grid g{.nx = n, .ny = n};
    const double dt = 0.25 * g.hx();
    const ScalarField before = scalar_field(g, bump);
    const ScalarField after = scalar_field(g, [&](Vec2 p) { return bump(p - dt * u); });
    const double r = continuity_residual(before, after, VectorField(g, u), dt);
    if (prev > 0.0) {
      EXPECT_GT(prev / r, 1.8) << n;
    }
    prev = r;
  }
}

TEST(Continuity, ResidualShrinksUnderRefinement) {
  // With dt tied to h the residual carries both the O(h^2) stencil error and
  // the O(dt) splitting error, so halving both must shrink it.
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    SolverConfig c = scenario_defaults("uniaxial_compression");
    c.grid = {.nx = n, .ny = n};
    const VectorField xi = initial_reference_map(c);
    const VectorField v = swirl(c.grid, 1.0);
    const double dt = 0.5 * c.grid.hx();
    const ScalarField rho0 = derived_density(xi, c.physics.material);
    const ScalarField rho1 = derived_density(advect_reference_map(xi, v, dt), c.physics.material);
    const double r = continuity_residual(rho0, rho1, v, dt);
    if (prev > 0.0) {
      EXPECT_GE(prev / r, 1.8) << n;
    }
    prev = r;
  }
}

TEST(PlasticUpdate, ExponentialKeepsDeterminantOverManySteps) {
  Gen gen(51);
  const Grid g{.nx = 8, .ny = 8};
  TensorField Fp(g, Tensor2::identity(2)), Lp(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) Lp(i, j) = gen.deviatoric(2, 2.0);
  for (int n = 0; n < 1000; ++n) Fp = plastic_exponential_update(Fp, Lp, 1e-3);
  EXPECT_LE(max_isochoric_defect(Fp), 1e-10);
}

TEST(PlasticUpdate, TracedRateRejected) {
  const Grid g{.nx = 8, .ny = 8};
  TensorField Lp(g);
  Lp(3, 3) = Tensor2::diag({1.0, 0.5});
  try {
    plastic_exponential_update(TensorField(g, Tensor2::identity(2)), Lp, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_deviatoric_rate);
  }
}

TEST(PlasticUpdate, RenormalizationRestoresUnitDeterminant) {
  Gen gen(52);
  const Grid g{.nx = 8, .ny = 8};
  TensorField Fp(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) Fp(i, j) = gen.near_identity();
  EXPECT_LE(max_isochoric_defect(renormalize_isochoric(Fp)), 1e-14);
}

TEST(Transport, ZeroVelocityIsAFixedPoint) {
  SolverConfig c = scenario_defaults("uniaxial_compression");
  c.grid = {.nx = 16, .ny = 16};
  const StateFields s = initial_state(c);
  const VectorField zero(c.grid);
  EXPECT_EQ(advect_reference_map(s.xi, zero, 0.1), s.xi);
  TensorField Fp(c.grid);
  Gen gen(53);
  for (int j = 0; j < c.grid.ny; ++j)
    for (int i = 0; i < c.grid.nx; ++i) Fp(i, j) = gen.isochoric();
  EXPECT_EQ(transport_plastic_distortion(Fp, zero, 0.1), Fp);
  EXPECT_EQ(advect_plastic_distortion(Fp, zero, TensorField(c.grid), 0.1), Fp);
}

TEST(Transport, ReferenceMapStaysWithinBounds) {
  SolverConfig c = scenario_defaults("shear_heating");
  c.grid = {.nx = 32, .ny = 32};
  VectorField xi = initial_reference_map(c);
  const VectorField v = swirl(c.grid, 1.0);
  for (int n = 0; n < 50; ++n) {
    double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
    for (int j = 0; j < c.grid.ny; ++j)
      for (int i = 0; i < c.grid.nx; ++i)
        for (int a = 0; a < 2; ++a) lo[a] = std::min(lo[a], xi(i, j)[a]), hi[a] = std::max(hi[a], xi(i, j)[a]);
    xi = advect_reference_map(xi, v, 0.5 * c.grid.hx());
    for (int j = 0; j < c.grid.ny; ++j)
      for (int i = 0; i < c.grid.nx; ++i)
        for (int a = 0; a < 2; ++a) {
          EXPECT_GE(xi(i, j)[a], lo[a] - 1e-14);
          EXPECT_LE(xi(i, j)[a], hi[a] + 1e-14);
        }
  }
}

TEST(Transport, CflCapEnforced) {
  const Grid g{.nx = 8, .ny = 8};
  const VectorField v(g, Vec2{1.0, 0.0});
  try {
    advect_reference_map(identity_map(g), v, 2.0 * g.hx(), 0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cfl_violation);
  }
}

TEST(Transport, ElasticStrainFieldComposes) {
  Gen gen(54);
  const Grid g{.nx = 8, .ny = 8};
  TensorField Fp(g), G(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) Fp(i, j) = gen.isochoric(), G(i, j) = gen.near_identity();
  const TensorField Fe = elastic_strain_field(Fp, G);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      EXPECT_LT(eplast::testing::max_abs_diff(Fe(i, j) * Fp(i, j) * G(i, j), Tensor2::identity(2)), 1e-12);
}
