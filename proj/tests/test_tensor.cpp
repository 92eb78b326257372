#include <gtest/gtest.h>

#include "eplast/error.hpp"
#include "support.hpp"

using namespace eplast;
using eplast::testing::Gen;
using eplast::testing::max_abs_diff;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::unknown_name;
}

}  // namespace

TEST(Tensor, DeformationGradientOfIdentityIsIdentity) {
  EXPECT_EQ(deformation_gradient(Tensor2::identity(2)), Tensor2::identity(2));
}

TEST(Tensor, DeformationGradientOfUniformDilation) {
  const Tensor2 F = deformation_gradient(Tensor2::diag({0.5, 0.5}));
  EXPECT_DOUBLE_EQ(F(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(F(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(F(0, 1), 0.0);
}

TEST(Tensor, DeformationGradientMultipliesBackToIdentity) {
  Gen gen(11);
  for (int d : {2, 3})
    for (int n = 0; n < 200; ++n) {
      const Tensor2 gx = gen.near_identity(d);
      EXPECT_LT(max_abs_diff(deformation_gradient(gx) * gx, Tensor2::identity(d)), 1e-12);
    }
}

TEST(Tensor, SingularInputIsRejected) {
  EXPECT_EQ(kind_of([] { deformation_gradient(Tensor2(2, {1, 2, 2, 4})); }), ErrorKind::singular_matrix);
  EXPECT_EQ(kind_of([] { elastic_strain(Tensor2::identity(2), Tensor2(2)); }), ErrorKind::singular_matrix);
}

TEST(Tensor, ElasticStrainTrivialCases) {
  const Tensor2 I = Tensor2::identity(2);
  EXPECT_EQ(elastic_strain(I, I), I);
  Gen gen(12);
  const Tensor2 gx = gen.near_identity();
  EXPECT_LT(max_abs_diff(elastic_strain(I, gx), deformation_gradient(gx)), 1e-15);
}

TEST(Tensor, ElasticStrainKeepsDeterminantWithIsochoricPlasticity) {
  Gen gen(13);
  for (int n = 0; n < 200; ++n) {
    const Tensor2 Fp = gen.isochoric();
    const Tensor2 gx = gen.near_identity();
    const Tensor2 Fe = elastic_strain(Fp, gx);
    EXPECT_NEAR(det(Fe), det(deformation_gradient(gx)), 1e-12 * std::abs(det(Fe)));
    // exact inverse composition
    EXPECT_LT(max_abs_diff(Fe * Fp * gx, Tensor2::identity(2)), 1e-12);
  }
}

TEST(Tensor, VelocityGradientSplitCases) {
  Gen gen(14);
  const Tensor2 gv = gen.matrix();
  const Tensor2 Fe = gen.near_identity();
  EXPECT_LT(max_abs_diff(velocity_gradient_split(gv, Fe, Tensor2(2)), gv), 1e-15);
  const Tensor2 Lp = gen.deviatoric();
  EXPECT_LT(max_abs_diff(velocity_gradient_split(Tensor2(2), Tensor2::identity(2), Lp), -Lp), 1e-15);
  for (int n = 0; n < 200; ++n) {
    const Tensor2 a = gen.matrix(), b = gen.near_identity(), c = gen.deviatoric();
    const Tensor2 r = velocity_gradient_split(a, b, c);
    EXPECT_LT(max_abs_diff(r * b + b * c, a * b), 1e-12);
  }
}

TEST(Tensor, DevIsTraceFree) {
  Gen gen(15);
  for (int d : {2, 3})
    for (int n = 0; n < 500; ++n) EXPECT_LE(std::abs(trace(dev(gen.matrix(d, 100.0)))), 1e-13 * 100.0);
}

TEST(Tensor, DevIsTraceFreeAtUnitScale) {
  Gen gen(16);
  for (int n = 0; n < 500; ++n) EXPECT_LE(std::abs(trace(dev(gen.matrix(2)))), 1e-13);
}

TEST(Tensor, ExponentialOfTraceFreeIsUnimodular) {
  Gen gen(17);
  for (int d : {2, 3})
    for (int n = 0; n < 300; ++n) {
      const Tensor2 L = gen.deviatoric(d, 2.0);
      const double tau = gen.uniform(0.0, 1.0);
      EXPECT_NEAR(det(expm(tau * L)), 1.0, 1e-12);
    }
}

TEST(Tensor, ExponentialMatchesDetExpTrace) {
  Gen gen(18);
  for (int n = 0; n < 300; ++n) {
    const Tensor2 A = gen.matrix(3, 1.0);
    EXPECT_NEAR(det(expm(A)) / std::exp(trace(A)), 1.0, 1e-12);
  }
}

TEST(Tensor, ExponentialOfDiagonalAndRotation) {
  const Tensor2 e = expm(Tensor2::diag({1.0, -2.0}));
  EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-14 * std::exp(1.0));
  EXPECT_NEAR(e(1, 1), std::exp(-2.0), 1e-15);
  const double a = 0.7;
  const Tensor2 r = expm(Tensor2(2, {0, -a, a, 0}));
  EXPECT_NEAR(r(0, 0), std::cos(a), 1e-15);
  EXPECT_NEAR(r(1, 0), std::sin(a), 1e-15);
}

TEST(Tensor, CofactorIdentity) {
  Gen gen(19);
  for (int d : {2, 3})
    for (int n = 0; n < 300; ++n) {
      const Tensor2 A = gen.matrix(d, 2.0);
      EXPECT_LT(max_abs_diff(cofactor(A) * transpose(A), det(A) * Tensor2::identity(d)), 1e-12);
    }
}
