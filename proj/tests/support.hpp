#pragma once

// Hand-rolled generators and small oracles shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "eplast/grid.hpp"
#include "eplast/tensor.hpp"

namespace eplast::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Tensor2 matrix(int d = 2, double scale = 1.0) {
    Tensor2 a(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = uniform(-scale, scale);
    return a;
  }

  // I + perturbation with det bounded away from zero.
  Tensor2 near_identity(int d = 2, double spread = 0.4) {
    for (;;) {
      Tensor2 a = Tensor2::identity(d) + matrix(d, spread);
      if (det(a) > 0.3) return a;
    }
  }

  Tensor2 deviatoric(int d = 2, double scale = 1.0) { return dev(matrix(d, scale)); }

  // det = 1 exactly up to round-off.
  Tensor2 isochoric(int d = 2) { return expm(deviatoric(d, 0.5)); }

  Tensor2 rotation(int d = 2) {
    if (d == 2) {
      const double a = uniform(-M_PI, M_PI);
      return Tensor2(2, {std::cos(a), -std::sin(a), std::sin(a), std::cos(a)});
    }
    // exp of a skew matrix
    Tensor2 w(3);
    w(0, 1) = uniform(-2, 2);
    w(0, 2) = uniform(-2, 2);
    w(1, 2) = uniform(-2, 2);
    w(1, 0) = -w(0, 1);
    w(2, 0) = -w(0, 2);
    w(2, 1) = -w(1, 2);
    return expm(w);
  }

  Vec2 point() { return {uniform(0, 1), uniform(0, 1)}; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const Tensor2& a, const Tensor2& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Central differences of a scalar function of a matrix.
inline Tensor2 fd_gradient(const std::function<double(const Tensor2&)>& f, const Tensor2& a, double h = 1e-6) {
  Tensor2 g(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      Tensor2 p = a, m = a;
      p(i, j) += h;
      m(i, j) -= h;
      g(i, j) = (f(p) - f(m)) / (2 * h);
    }
  return g;
}

// Relative error of a tensor against an oracle, normalized by the oracle size.
inline double rel_err(const Tensor2& got, const Tensor2& want) {
  return norm(got - want) / std::max(norm(want), 1e-12);
}

template <class F>
ScalarField scalar_field(const Grid& g, F&& f) {
  ScalarField out(g);
  for (int j = -1; j <= g.ny; ++j)
    for (int i = -1; i <= g.nx; ++i) out(i, j) = f(g.center(i, j));
  return out;
}

template <class F>
VectorField vector_field(const Grid& g, F&& f) {
  VectorField out(g);
  for (int j = -1; j <= g.ny; ++j)
    for (int i = -1; i <= g.nx; ++i) out(i, j) = f(g.center(i, j));
  return out;
}

inline double interior_sum(const ScalarField& f) {
  double s = 0.0;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) s += f(i, j);
  return s;
}

}  // namespace eplast::testing
