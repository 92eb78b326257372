#pragma once

// Centred difference operators on the collocated grid, their exact
// discrete transposes, and semi-Lagrangian remapping.

#include <algorithm>
#include <cmath>

#include "eplast/grid.hpp"
#include "eplast/parallel.hpp"

namespace eplast {

// How a stencil sees the cell just outside the domain.
enum class Ghost {
  zero,         // Dirichlet: ghost value 0
  mirror,       // even reflection about the boundary cell: zero normal derivative
  extrapolate,  // quadratic extrapolation: second-order one-sided derivative
  stored,       // whatever the field holds in its ghost layer
};

template <class T>
T ghost_value(const Field<T>& f, int i, int j, Ghost g) {
  const int nx = f.nx(), ny = f.ny();
  const bool inside = i >= 0 && i < nx && j >= 0 && j < ny;
  if (inside || g == Ghost::stored) return f(i, j);
  if (g == Ghost::zero) return T{};
  // Exactly one index is outside for the stencils used here.
  int i1 = i, j1 = j, i2 = i, j2 = j, i0 = i, j0 = j;
  if (i < 0) { i0 = 0; i1 = 1; i2 = 2; }
  else if (i >= nx) { i0 = nx - 1; i1 = nx - 2; i2 = nx - 3; }
  else if (j < 0) { j0 = 0; j1 = 1; j2 = 2; }
  else { j0 = ny - 1; j1 = ny - 2; j2 = ny - 3; }
  if (g == Ghost::mirror) return f(i1, j1);
  return 3.0 * f(i0, j0) - 3.0 * f(i1, j1) + f(i2, j2);
}

// Centred derivative along an axis.
template <class T>
T central(const Field<T>& f, int i, int j, int axis, Ghost g) {
  const double inv = 0.5 / f.grid().h(axis);
  if (axis == 0) return inv * (ghost_value(f, i + 1, j, g) - ghost_value(f, i - 1, j, g));
  return inv * (ghost_value(f, i, j + 1, g) - ghost_value(f, i, j - 1, g));
}

// Row i of the transpose of the centred derivative built with ghost policy
// zero or mirror. The mirror derivative vanishes on boundary rows, so its
// transpose ignores boundary entries of the argument.
template <class T>
T central_transpose(const Field<T>& f, int i, int j, int axis, Ghost g) {
  const int n = f.grid().n(axis);
  const double inv = 0.5 / f.grid().h(axis);
  auto pick = [&](int k) -> T {
    if (k < 0 || k >= n) return T{};
    if (g == Ghost::mirror && (k == 0 || k == n - 1)) return T{};
    return axis == 0 ? f(k, j) : f(i, k);
  };
  const int k = axis == 0 ? i : j;
  return inv * (pick(k - 1) - pick(k + 1));
}

VectorField gradient(const ScalarField& f, Ghost g = Ghost::extrapolate);
TensorField gradient(const VectorField& v, Ghost g = Ghost::extrapolate);  // (a,b) = d_b v_a
HyperField gradient(const TensorField& A, Ghost g = Ghost::extrapolate);   // (a,b,k) = d_k A_ab

ScalarField divergence(const VectorField& v, Ghost g = Ghost::extrapolate);
VectorField divergence(const TensorField& T, Ghost g = Ghost::extrapolate);  // d_b T_ab
TensorField divergence(const HyperField& H, Ghost g = Ghost::extrapolate);   // d_k H_abk

// Exact transposes of gradient(., zero) and gradient(., mirror).
ScalarField gradient_transpose(const VectorField& g, Ghost policy);
VectorField gradient_transpose(const TensorField& S, Ghost policy);
TensorField gradient_transpose(const HyperField& H, Ghost policy);

TensorField sym_velocity_gradient(const VectorField& v, Ghost g = Ghost::extrapolate);

// -G^T(nu |G e|^{p-2} G e) with G the mirror-ghost gradient: the weak
// divergence of the hyperstress, so that sum(result:e) = -nu sum |G e|^p.
TensorField p_laplacian_operator(const TensorField& e, double nu, double exponent);

// Largest |v| dt / h over interior cells.
double cfl_number(const VectorField& v, double dt);

// Departure points of backward characteristics in fractional index space.
struct Departures {
  Grid grid;
  std::vector<Vec2> points;  // j-major over interior cells
};

// RK2 back-trace with bilinearly interpolated velocity.
Departures trace_departures(const VectorField& v, double dt);

// Bilinear interpolation at a fractional index; outside the hull of cell
// centres the edge cells are extrapolated linearly.
template <class T>
T interpolate(const Field<T>& f, double fi, double fj) {
  const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, f.nx() - 2);
  const int j0 = std::clamp(static_cast<int>(std::floor(fj)), 0, f.ny() - 2);
  const double a = fi - i0, b = fj - j0;
  return ((1.0 - a) * (1.0 - b)) * f(i0, j0) + (a * (1.0 - b)) * f(i0 + 1, j0) +
         ((1.0 - a) * b) * f(i0, j0 + 1) + (a * b) * f(i0 + 1, j0 + 1);
}

// Semi-Lagrangian remap; the ghost layer of the input is carried over.
template <class T>
Field<T> remap(const Field<T>& f, const Departures& d) {
  Field<T> out = f;
  const int nx = f.nx();
  parallel_rows(f.ny(), [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const Vec2 p = d.points[static_cast<std::size_t>(j) * nx + i];
      out(i, j) = interpolate(f, p.x, p.y);
    }
  });
  return out;
}

template <class T>
Field<T> semi_lagrangian(const Field<T>& f, const VectorField& v, double dt) {
  return remap(f, trace_departures(v, dt));
}

// Cell-volume weighted sum of a per-cell quantity, fixed order.
template <class F>
double integrate(const Grid& g, F&& value) {
  std::vector<double> cells(static_cast<std::size_t>(g.cells()));
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) cells[static_cast<std::size_t>(j) * g.nx + i] = value(i, j);
  });
  return pairwise_sum(cells) * g.cell_volume();
}

}  // namespace eplast
