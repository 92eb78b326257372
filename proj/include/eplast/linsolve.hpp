#pragma once

#include <functional>
#include <span>
#include <vector>

namespace eplast {

struct CgSettings {
  double tolerance = 1e-9;  // relative residual
  int max_iterations = 500;
  friend bool operator==(const CgSettings&, const CgSettings&) = default;
};

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
};

// y = A x for a symmetric positive (semi)definite matrix-free operator.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

// Jacobi-preconditioned conjugate gradients starting from the given x.
// Entries with a zero inverse diagonal are treated as frozen unknowns.
// Throws LinearSolveFailure on breakdown or when the cap is reached.
CgResult conjugate_gradient(const LinearOperator& A, std::span<const double> inverse_diagonal,
                            std::span<const double> b, std::span<double> x, const CgSettings& settings);

// Fixed-order dot product.
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace eplast
