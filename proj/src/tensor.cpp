#include "eplast/tensor.hpp"

#include <cassert>
#include <sstream>

#include "eplast/error.hpp"

namespace eplast {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::singular_matrix: return "SingularMatrix";
    case ErrorKind::non_positive_determinant: return "NonPositiveDeterminant";
    case ErrorKind::negative_temperature: return "NegativeTemperature";
    case ErrorKind::non_deviatoric_input: return "NonDeviatoricInput";
    case ErrorKind::non_deviatoric_rate: return "NonDeviatoricRate";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::cfl_violation: return "CflViolation";
    case ErrorKind::linear_solve_failure: return "LinearSolveFailure";
    case ErrorKind::negative_enthalpy: return "NegativeEnthalpy";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::validation_error: return "ValidationError";
    case ErrorKind::unknown_name: return "UnknownName";
  }
  return "Error";
}

Tensor2::Tensor2(int dim) : d_(dim) { assert(dim == 2 || dim == 3); }

Tensor2::Tensor2(int dim, std::initializer_list<double> rows) : d_(dim) {
  assert(static_cast<int>(rows.size()) == dim * dim);
  auto it = rows.begin();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) (*this)(i, j) = *it++;
}

Tensor2 Tensor2::identity(int dim) {
  Tensor2 t(dim);
  for (int i = 0; i < dim; ++i) t(i, i) = 1.0;
  return t;
}

Tensor2 Tensor2::diag(std::initializer_list<double> entries) {
  Tensor2 t(static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) t(i, i) = e, ++i;
  return t;
}

Tensor2 operator*(const Tensor2& a, const Tensor2& b) {
  const int d = a.dim();
  Tensor2 c(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Tensor2 transpose(const Tensor2& a) {
  const int d = a.dim();
  Tensor2 t(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t(i, j) = a(j, i);
  return t;
}

double trace(const Tensor2& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

double contract(const Tensor2& a, const Tensor2& b) {
  const int d = a.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += a(i, j) * b(i, j);
  return s;
}

double contract(const Tensor3& a, const Tensor3& b) {
  const int d = a.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) s += a(i, j, k) * b(i, j, k);
  return s;
}

double norm(const Tensor2& a) { return std::sqrt(contract(a, a)); }
double norm(const Tensor3& a) { return std::sqrt(contract(a, a)); }

double det(const Tensor2& a) {
  if (a.dim() == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Tensor2 cofactor(const Tensor2& a) {
  if (a.dim() == 2) return Tensor2(2, {a(1, 1), -a(1, 0), -a(0, 1), a(0, 0)});
  Tensor2 c(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      // Cyclic index order absorbs the checkerboard sign.
      c(i, j) = a(i1, j1) * a(i2, j2) - a(i1, j2) * a(i2, j1);
    }
  return c;
}

Tensor2 sym(const Tensor2& a) { return 0.5 * (a + transpose(a)); }

Tensor2 dev(const Tensor2& a) {
  Tensor2 r = a;
  const double mean = trace(a) / a.dim();
  for (int i = 0; i < a.dim(); ++i) r(i, i) -= mean;
  return r;
}

Tensor2 inverse(const Tensor2& a) {
  const double dt = det(a);
  const double scale = std::pow(norm(a), a.dim());
  if (!(std::abs(dt) > 1e-12 * scale) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "det = " << dt << " below floor 1e-12*|A|^d = " << 1e-12 * scale;
    throw Error(ErrorKind::singular_matrix, os.str());
  }
  return (1.0 / dt) * transpose(cofactor(a));
}

Tensor2 expm(const Tensor2& a) {
  const int d = a.dim();
  const double n = norm(a);
  int squarings = 0;
  // Scaled argument at most 1/8: ten Taylor terms leave a tail below 1e-17.
  if (n > 0.125) squarings = static_cast<int>(std::ceil(std::log2(n * 8.0)));
  const Tensor2 x = std::ldexp(1.0, -squarings) * a;

  // Work with E = exp(x) - I; squaring as 2E + E^2 keeps the small part
  // from being swamped by the identity.
  Tensor2 e(d);
  Tensor2 term = Tensor2::identity(d);
  for (int k = 1; k <= 10; ++k) {
    term = (1.0 / k) * (term * x);
    e += term;
  }
  for (int s = 0; s < squarings; ++s) e = 2.0 * e + e * e;
  return Tensor2::identity(d) + e;
}

bool all_finite(const Tensor2& a) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (!std::isfinite(a(i, j))) return false;
  return true;
}

Tensor2 deformation_gradient(const Tensor2& grad_xi) { return inverse(grad_xi); }

Tensor2 elastic_strain(const Tensor2& Fp, const Tensor2& grad_xi) { return inverse(Fp * grad_xi); }

Tensor2 velocity_gradient_split(const Tensor2& grad_v, const Tensor2& Fe, const Tensor2& Lp) {
  return grad_v - Fe * Lp * inverse(Fe);
}

}  // namespace eplast
