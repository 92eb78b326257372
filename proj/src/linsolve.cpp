#include "eplast/linsolve.hpp"

#include <cmath>
#include <sstream>

#include "eplast/error.hpp"
#include "eplast/parallel.hpp"

namespace eplast {

namespace {

constexpr int block = 1024;

template <class Body>
void for_each_index(std::size_t n, Body&& body) {
  const int blocks = static_cast<int>((n + block - 1) / block);
  parallel_rows(blocks, [&](int b) {
    const std::size_t end = std::min(n, static_cast<std::size_t>(b + 1) * block);
    for (std::size_t k = static_cast<std::size_t>(b) * block; k < end; ++k) body(k);
  });
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  std::vector<double> prod(a.size());
  for_each_index(a.size(), [&](std::size_t k) { prod[k] = a[k] * b[k]; });
  return pairwise_sum(prod);
}

CgResult conjugate_gradient(const LinearOperator& A, std::span<const double> inverse_diagonal,
                            std::span<const double> b, std::span<double> x, const CgSettings& settings) {
  const std::size_t n = b.size();
  std::vector<double> r(n), z(n), p(n), q(n);
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    for (double& v : x) v = 0.0;
    return {0, 0.0};
  }
  A(x, q);
  for_each_index(n, [&](std::size_t k) { r[k] = inverse_diagonal[k] != 0.0 ? b[k] - q[k] : 0.0; });
  double rnorm = std::sqrt(dot(r, r));
  if (rnorm <= settings.tolerance * bnorm) return {0, rnorm / bnorm};
  for_each_index(n, [&](std::size_t k) { z[k] = inverse_diagonal[k] * r[k]; p[k] = z[k]; });
  double rz = dot(r, z);
  for (int it = 1; it <= settings.max_iterations; ++it) {
    A(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      std::ostringstream os;
      os << "conjugate gradients broke down at iteration " << it << " (p.Ap = " << pq << ")";
      throw Error(ErrorKind::linear_solve_failure, os.str());
    }
    const double a = rz / pq;
    for_each_index(n, [&](std::size_t k) {
      x[k] += a * p[k];
      r[k] -= a * q[k];
    });
    rnorm = std::sqrt(dot(r, r));
    if (!std::isfinite(rnorm)) throw Error(ErrorKind::linear_solve_failure, "non-finite residual");
    if (rnorm <= settings.tolerance * bnorm) return {it, rnorm / bnorm};
    for_each_index(n, [&](std::size_t k) { z[k] = inverse_diagonal[k] * r[k]; });
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for_each_index(n, [&](std::size_t k) { p[k] = z[k] + beta * p[k]; });
  }
  std::ostringstream os;
  os << "conjugate gradients reached " << settings.max_iterations << " iterations with relative residual "
     << rnorm / bnorm;
  throw Error(ErrorKind::linear_solve_failure, os.str());
}

}  // namespace eplast
