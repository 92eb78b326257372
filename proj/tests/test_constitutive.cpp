#include <gtest/gtest.h>

#include "eplast/constitutive.hpp"
#include "eplast/error.hpp"
#include "eplast/scenarios.hpp"
#include "support.hpp"

using namespace eplast;
using eplast::testing::fd_gradient;
using eplast::testing::Gen;
using eplast::testing::max_abs_diff;
using eplast::testing::rel_err;

namespace {

const Point X0{0.3, 0.6, 0.0};

MaterialModel unit_material() {
  MaterialModel m;
  m.bulk = 1.0;
  m.shear = 1.0;
  m.heat_capacity = 1.0;
  m.coupling = 1.0;
  m.alpha = 2.0;
  return m;
}

// Cubic blends exactly as published, in their own variables.
double published_f(double x) { return 3 * (x - 1) * (x - 1) - 2 * (x - 1) * (x - 1) * (x - 1); }
double published_g(double x) { return 3 * (x - 2) * (x - 2) + 2 * (x - 2) * (x - 2) * (x - 2); }

double independent_pi(const Tensor2& Fe, double lambda) {
  const double d = det(Fe), n = norm(Fe);
  const double a = d >= lambda ? 1.0 : d <= lambda / 2 ? 0.0 : published_f(2 * d / lambda);
  const double b = n <= 1 / lambda ? 1.0 : n >= 2 / lambda ? 0.0 : published_g(lambda * n);
  return a * b;
}

// diag(a, b) with a b = det and a^2 + b^2 = n^2.
Tensor2 with_det_and_norm(double d, double n) {
  const double s = std::sqrt(n * n * n * n - 4 * d * d);
  const double a2 = 0.5 * (n * n + s), b2 = 0.5 * (n * n - s);
  return Tensor2::diag({std::sqrt(a2), std::sqrt(b2)});
}

}  // namespace

TEST(StoredEnergy, VanishesAtIdentity) {
  EXPECT_EQ(stored_energy(MaterialModel{}, X0, Tensor2::identity(2)), 0.0);
}

TEST(StoredEnergy, UniformDilationIsVolumetricOnly) {
  EXPECT_DOUBLE_EQ(stored_energy(unit_material(), X0, 2.0 * Tensor2::identity(2)), 4.5);
}

TEST(StoredEnergy, RejectsInvertedStrain) {
  try {
    stored_energy(MaterialModel{}, X0, Tensor2::diag({1.0, -1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_positive_determinant);
  }
}

TEST(StoredEnergy, FrameIndifferent) {
  Gen gen(21);
  const MaterialModel m = unit_material();
  for (int d : {2, 3})
    for (int n = 0; n < 500; ++n) {
      const Tensor2 Fe = gen.near_identity(d), Q = gen.rotation(d);
      const double a = stored_energy(m, X0, Fe), b = stored_energy(m, X0, Q * Fe);
      EXPECT_LE(std::abs(a - b), 1e-12 * std::max(std::abs(a), 1e-300)) << a << " " << b;
    }
}

TEST(StoredEnergy, NonNegative) {
  Gen gen(22);
  for (int n = 0; n < 500; ++n) EXPECT_GE(stored_energy(MaterialModel{}, X0, gen.near_identity(2, 0.8)), -1e-15);
}

TEST(StoredStress, ZeroAtIdentity) {
  EXPECT_LT(norm(stored_stress(MaterialModel{}, X0, Tensor2::identity(2))), 1e-15);
}

TEST(StoredStress, VolumetricHandDerivative) {
  MaterialModel m = unit_material();
  m.shear = 0.0;
  EXPECT_LT(max_abs_diff(stored_stress(m, X0, 2.0 * Tensor2::identity(2)), Tensor2::diag({6.0, 6.0})), 1e-14);
}

TEST(StoredStress, MatchesFiniteDifferences) {
  Gen gen(23);
  const MaterialModel m = unit_material();
  for (int d : {2, 3})
    for (int n = 0; n < 100; ++n) {
      const Tensor2 Fe = gen.near_identity(d);
      const Tensor2 fd = fd_gradient([&](const Tensor2& F) { return stored_energy(m, X0, F); }, Fe);
      EXPECT_LT(rel_err(stored_stress(m, X0, Fe), fd), 1e-6);
    }
}

TEST(ThermalEnergy, VanishesAtZeroTemperature) {
  EXPECT_EQ(thermal_energy(MaterialModel{}, X0, Tensor2::identity(2), 0.0).energy, 0.0);
}

TEST(ThermalEnergy, StrainDerivativeAtIdentity) {
  MaterialModel m;
  m.coupling = 0.3;
  m.alpha = 1.5;
  const double theta = 2.0;
  const Tensor2 want = (-0.3 * std::pow(theta, 1.5)) * Tensor2::identity(2);
  EXPECT_LT(max_abs_diff(thermal_energy(m, X0, Tensor2::identity(2), theta).d_fe, want), 1e-15);
}

TEST(ThermalEnergy, DerivativesMatchFiniteDifferences) {
  Gen gen(24);
  MaterialModel m;
  m.coupling = 0.2;
  m.alpha = 1.7;
  for (int n = 0; n < 100; ++n) {
    const Tensor2 Fe = gen.near_identity();
    const double theta = gen.uniform(0.1, 50.0);
    const ThermalPart tp = thermal_energy(m, X0, Fe, theta);
    const Tensor2 fd = fd_gradient([&](const Tensor2& F) { return thermal_energy(m, X0, F, theta).energy; }, Fe);
    EXPECT_LT(rel_err(tp.d_fe, fd), 1e-6);
    const double h = 1e-6 * theta;
    const double fdt =
        (thermal_energy(m, X0, Fe, theta + h).energy - thermal_energy(m, X0, Fe, theta - h).energy) / (2 * h);
    EXPECT_LE(std::abs(tp.d_theta - fdt), 1e-6 * std::abs(fdt));
  }
}

TEST(ThermalEnergy, RejectsNegativeTemperature) {
  try {
    thermal_energy(MaterialModel{}, X0, Tensor2::identity(2), -1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::negative_temperature);
  }
}

TEST(Hardening, IdentityEnergyAndGradient) {
  MaterialModel m;
  m.hardening = 2.0;
  const HardeningPart h = hardening_energy(m, X0, Tensor2::identity(2));
  EXPECT_DOUBLE_EQ(h.energy, 2.0);
  EXPECT_EQ(h.gradient, Tensor2::diag({2.0, 2.0}));
}

TEST(Hardening, ZeroModulus) {
  MaterialModel m;
  m.hardening = 0.0;
  Gen gen(25);
  const HardeningPart h = hardening_energy(m, X0, gen.isochoric());
  EXPECT_EQ(h.energy, 0.0);
  EXPECT_EQ(norm(h.gradient), 0.0);
}

TEST(Hardening, EvenAndFiniteDifferences) {
  Gen gen(26);
  const MaterialModel m;
  for (int n = 0; n < 100; ++n) {
    const Tensor2 Fp = gen.isochoric();
    EXPECT_EQ(hardening_energy(m, X0, Fp).energy, hardening_energy(m, X0, -Fp).energy);
    const Tensor2 fd = fd_gradient([&](const Tensor2& F) { return hardening_energy(m, X0, F).energy; }, Fp);
    EXPECT_LT(rel_err(hardening_energy(m, X0, Fp).gradient, fd), 1e-6);
  }
}

TEST(CauchyStress, ThermalPressureAtIdentity) {
  MaterialModel m;
  m.coupling = 0.01;
  const double theta = 3.0;
  const Tensor2 T = elastic_cauchy_stress(m, X0, Tensor2::identity(2), theta);
  EXPECT_LT(max_abs_diff(T, (-0.01 * 9.0) * Tensor2::identity(2)), 1e-15);
  EXPECT_LT(norm(elastic_cauchy_stress(m, X0, Tensor2::identity(2), 0.0)), 1e-15);
}

TEST(CauchyStress, Symmetric) {
  Gen gen(27);
  const MaterialModel m = unit_material();
  for (int n = 0; n < 500; ++n) {
    const Tensor2 T = elastic_cauchy_stress(m, X0, gen.near_identity(), gen.uniform(0.0, 10.0));
    EXPECT_LE(norm(T - transpose(T)), 1e-10 * norm(T));
  }
}

TEST(Mandel, SphericalThermalPartVanishes) {
  MaterialModel m;
  m.hardening = 0.0;
  const Tensor2 M = mandel_driving_force(m, X0, Tensor2::identity(2), Tensor2::identity(2), 5.0);
  EXPECT_LT(norm(M), 1e-15);
}

TEST(Mandel, TraceFree) {
  Gen gen(28);
  const MaterialModel m = unit_material();
  for (int n = 0; n < 500; ++n) {
    const Tensor2 M = mandel_driving_force(m, X0, gen.near_identity(), gen.isochoric(), gen.uniform(0, 10));
    EXPECT_LE(std::abs(trace(M)), 1e-12);
  }
}

TEST(Mandel, DirectionalDerivativesAlongTraceFreeFlows) {
  MaterialModel m = unit_material();
  m.hardening = 0.0;
  const Tensor2 Fe = Tensor2::diag({2.0, 0.5});
  const Tensor2 M = mandel_driving_force(m, X0, Fe, Tensor2::identity(2), 0.0);
  const Tensor2 basis[] = {Tensor2::diag({1.0, -1.0}), Tensor2(2, {0, 1, 0, 0}), Tensor2(2, {0, 0, 1, 0})};
  for (const Tensor2& E : basis) {
    const double h = 1e-6;
    const double fd = (stored_energy(m, X0, Fe * expm(h * E)) - stored_energy(m, X0, Fe * expm(-h * E))) / (2 * h);
    EXPECT_NEAR(contract(M, E), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(PlasticDissipation, Cases) {
  MaterialModel m;
  m.viscosity.m0 = 2.0;
  EXPECT_EQ(norm(plastic_dissipation_gradient(m, 1.0, Tensor2(2))), 0.0);
  EXPECT_EQ(plastic_dissipation_gradient(m, 1.0, Tensor2::diag({1.0, -1.0})), Tensor2::diag({2.0, -2.0}));
  try {
    plastic_dissipation_gradient(m, 1.0, Tensor2::diag({1.0, 1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_deviatoric_input);
  }
}

TEST(PlasticDissipation, GradientAndCoercivity) {
  Gen gen(29);
  const MaterialModel m = material_preset("melting_ramp");
  const double c_zeta = 0.5 * m.viscosity.infimum();
  for (int n = 0; n < 200; ++n) {
    const double theta = gen.uniform(0.0, 5.0);
    const Tensor2 Lp = gen.deviatoric(), E = gen.deviatoric();
    const double eps = 1e-5;
    const double dz = plastic_dissipation_potential(m, theta, Lp + eps * E) - plastic_dissipation_potential(m, theta, Lp);
    EXPECT_NEAR(dz, eps * contract(plastic_dissipation_gradient(m, theta, Lp), E), 10 * eps * eps * m.viscosity(theta));
    EXPECT_GE(plastic_dissipation_potential(m, theta, Lp), c_zeta * contract(Lp, Lp));
  }
}

TEST(Enthalpy, Cases) {
  const MaterialModel m = unit_material();
  EXPECT_EQ(heat_internal_energy(m, X0, Tensor2::identity(2), 0.0).w, 0.0);
  EXPECT_DOUBLE_EQ(heat_internal_energy(m, X0, Tensor2::identity(2), 1.0).w, 2.0);
  EXPECT_EQ(invert_enthalpy(m, X0, Tensor2::identity(2), 0.0), 0.0);
  EXPECT_NEAR(invert_enthalpy(m, X0, Tensor2::identity(2), 2.0), 1.0, 1e-14);
}

TEST(Enthalpy, IsThetaMinusThetaTimesDerivativeOverJ) {
  Gen gen(30);
  MaterialModel m;
  m.coupling = 0.05;
  m.alpha = 1.4;
  for (int n = 0; n < 100; ++n) {
    const Tensor2 Fe = gen.near_identity();
    const double theta = gen.uniform(0.1, 20.0);
    const ThermalPart tp = thermal_energy(m, X0, Fe, theta);
    const double want = (tp.energy - theta * tp.d_theta) / det(Fe);
    EXPECT_NEAR(heat_internal_energy(m, X0, Fe, theta).w, want, 1e-12 * want);
  }
}

TEST(Enthalpy, StrictlyIncreasingAndDerivative) {
  Gen gen(31);
  const MaterialModel m;
  for (int n = 0; n < 500; ++n) {
    const Tensor2 Fe = gen.near_identity();
    double a = gen.uniform(0.0, 100.0), b = gen.uniform(0.0, 100.0);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    EXPECT_LT(heat_internal_energy(m, X0, Fe, a).w, heat_internal_energy(m, X0, Fe, b).w);
    const double h = 1e-6 * b;
    const double fd = (heat_internal_energy(m, X0, Fe, b + h).w - heat_internal_energy(m, X0, Fe, b - h).w) / (2 * h);
    EXPECT_NEAR(heat_internal_energy(m, X0, Fe, b).dw_dtheta, fd, 1e-6 * fd);
  }
}

TEST(Enthalpy, RoundTripAllPresets) {
  Gen gen(32);
  for (const auto& entry : list_materials()) {
    const MaterialModel m = material_preset(entry.name);
    for (int n = 0; n < 300; ++n) {
      const double theta = n == 0 ? 0.0 : n == 1 ? 100.0 : gen.uniform(0.0, 100.0);
      const Tensor2 Fe = n % 2 ? gen.near_identity() : Tensor2::identity(2);
      const double w = heat_internal_energy(m, X0, Fe, theta).w;
      EXPECT_LE(std::abs(invert_enthalpy(m, X0, Fe, w) - theta), 1e-10) << entry.name << " theta " << theta;
    }
  }
}

TEST(Enthalpy, NegativeInputRejected) {
  try {
    invert_enthalpy(MaterialModel{}, X0, Tensor2::identity(2), -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::negative_enthalpy);
  }
}

TEST(Cutoff, PlateauAndZeroRegion) {
  const CutoffParams c{.lambda = 0.5, .enabled = true};
  EXPECT_EQ(cutoff_pi(Tensor2::identity(2), c), 1.0);
  EXPECT_EQ(cutoff_pi(0.1 * Tensor2::identity(2), c), 0.0);
  EXPECT_EQ(cutoff_pi(3.0 * Tensor2::identity(2), c), 0.0);  // |Fe| beyond 2/lambda
  EXPECT_EQ(det_lambda(Tensor2::diag({1.2, 0.9}), c), det(Tensor2::diag({1.2, 0.9})));
  EXPECT_EQ(det_lambda(0.1 * Tensor2::identity(2), c), 1.0);
}

TEST(Cutoff, PublishedBlendValue) {
  const CutoffParams c{.lambda = 0.5, .enabled = true};
  const Tensor2 Fe = with_det_and_norm(0.375, 2.0);
  ASSERT_NEAR(det(Fe), 0.375, 1e-14);
  ASSERT_NEAR(norm(Fe), 2.0, 1e-14);
  EXPECT_NEAR(cutoff_pi(Fe, c), 0.5, 1e-12);
  EXPECT_NEAR(det_lambda(Fe, c), 0.6875, 1e-12);
}

TEST(Cutoff, InteriorMatchesIndependentPolynomial) {
  Gen gen(33);
  for (double lambda : {0.25, 0.5, 0.8}) {
    const CutoffParams c{.lambda = lambda, .enabled = true};
    for (int n = 0; n < 500; ++n) {
      const Tensor2 Fe = gen.matrix(2, 2.5 / lambda);
      const double got = cutoff_pi(Fe, c);
      EXPECT_NEAR(got, independent_pi(Fe, lambda), 1e-12);
      EXPECT_GE(got, 0.0);
      EXPECT_LE(got, 1.0);
    }
  }
}

TEST(Cutoff, ContinuouslyDifferentiableAcrossTransitions) {
  const CutoffParams c{.lambda = 0.5, .enabled = true};
  // Along Fe = s I the determinant crosses lambda/2 and lambda, the norm 1/lambda and 2/lambda.
  const double h = 1e-5;
  auto f = [&](double s) { return cutoff_pi(s * Tensor2::identity(2), c); };
  for (double s0 : {std::sqrt(0.25), std::sqrt(0.5), 2.0 / std::sqrt(2.0), 4.0 / std::sqrt(2.0)}) {
    const double right = (-3 * f(s0) + 4 * f(s0 + h) - f(s0 + 2 * h)) / (2 * h);
    const double left = (3 * f(s0) - 4 * f(s0 - h) + f(s0 - 2 * h)) / (2 * h);
    EXPECT_NEAR(left, right, 1e-6) << "s0 = " << s0;
    EXPECT_NEAR(f(s0 + 1e-9), f(s0 - 1e-9), 1e-6);
  }
}

TEST(Cutoff, GradientMatchesFiniteDifferences) {
  Gen gen(34);
  const CutoffParams c{.lambda = 0.5, .enabled = true};
  int checked = 0;
  while (checked < 100) {
    const Tensor2 Fe = gen.matrix(2, 2.5);
    const double p = cutoff_pi(Fe, c);
    if (p <= 0.01 || p >= 0.99) continue;
    const Tensor2 fd = fd_gradient([&](const Tensor2& F) { return cutoff_pi(F, c); }, Fe);
    EXPECT_LT(rel_err(cutoff_pi_gradient(Fe, c), fd), 1e-6);
    ++checked;
  }
}

TEST(Conductivity, ConstantAndBoundaryFlux) {
  MaterialModel m;
  m.kappa = 0.7;
  EXPECT_EQ(conductivity(m, X0, Tensor2::identity(2), 3.0), 0.7);
  const BoundaryFlux insulated{};
  EXPECT_EQ(insulated.flux(0.0, X0, 5.0), 0.0);
  const BoundaryFlux cool{.kind = BoundaryFlux::Kind::newton, .k = 2.0, .theta_ext = 1.0};
  for (double theta : {0.0, 0.5, 1.0, 3.0}) {
    const double h = cool.flux(0.0, X0, theta);
    EXPECT_EQ((h > 0) - (h < 0), (1.0 - theta > 0) - (1.0 - theta < 0));
  }
}

TEST(MaterialValidation, AlphaOutOfRange) {
  MaterialModel m;
  m.alpha = 2.5;
  try {
    m.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation_error);
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
}

TEST(MaterialModulation, CheckerboardContrast) {
  const MaterialModel m = material_preset("checkerboard");
  const double a = m.modulation.amplitude;
  // tile centres sit deep inside each phase
  EXPECT_NEAR(m.modulation.factor({0.25, 0.25, 0}), 1 + a, 1e-6);
  EXPECT_NEAR(m.modulation.factor({0.75, 0.25, 0}), 1 - a, 1e-6);
}
