#include "eplast/reference.hpp"

#include <algorithm>
#include <cmath>

namespace eplast::reference {

namespace {

Vec2 at_or_zero(const VectorField& v, int i, int j) {
  if (i < 0 || j < 0 || i >= v.nx() || j >= v.ny()) return {};
  return v(i, j);
}

Tensor2 at_or_zero(const TensorField& S, int i, int j) {
  if (i < 0 || j < 0 || i >= S.nx() || j >= S.ny()) return Tensor2(2);
  return S(i, j);
}

template <class F>
double bilinear(const F& f, int nx, int ny, double x, double y) {
  int i = static_cast<int>(std::floor(x));
  int j = static_cast<int>(std::floor(y));
  i = std::min(std::max(i, 0), nx - 2);
  j = std::min(std::max(j, 0), ny - 2);
  const double a = x - i, b = y - j;
  return (1 - a) * (1 - b) * f(i, j) + a * (1 - b) * f(i + 1, j) + (1 - a) * b * f(i, j + 1) + a * b * f(i + 1, j + 1);
}

}  // namespace

TensorField velocity_gradient(const VectorField& v) {
  const Grid& g = v.grid();
  TensorField out(g, Tensor2(2));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 e = at_or_zero(v, i + 1, j), w = at_or_zero(v, i - 1, j);
      const Vec2 n = at_or_zero(v, i, j + 1), s = at_or_zero(v, i, j - 1);
      Tensor2& G = out(i, j);
      G(0, 0) = (e.x - w.x) / (2 * g.hx());
      G(1, 0) = (e.y - w.y) / (2 * g.hx());
      G(0, 1) = (n.x - s.x) / (2 * g.hy());
      G(1, 1) = (n.y - s.y) / (2 * g.hy());
    }
  return out;
}

VectorField velocity_gradient_transpose(const TensorField& S) {
  const Grid& g = S.grid();
  VectorField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Tensor2 w = at_or_zero(S, i - 1, j), e = at_or_zero(S, i + 1, j);
      const Tensor2 s = at_or_zero(S, i, j - 1), n = at_or_zero(S, i, j + 1);
      for (int a = 0; a < 2; ++a)
        out(i, j)[a] = (w(a, 0) - e(a, 0)) / (2 * g.hx()) + (s(a, 1) - n(a, 1)) / (2 * g.hy());
    }
  return out;
}

ScalarField semi_lagrangian(const ScalarField& f, const VectorField& v, double dt) {
  const Grid& g = f.grid();
  ScalarField out = f;
  auto vx = [&](int i, int j) { return v(i, j).x; };
  auto vy = [&](int i, int j) { return v(i, j).y; };
  auto fv = [&](int i, int j) { return f(i, j); };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double cx = dt / g.hx(), cy = dt / g.hy();
      const double mx = i - 0.5 * cx * v(i, j).x, my = j - 0.5 * cy * v(i, j).y;
      const double ux = bilinear(vx, g.nx, g.ny, mx, my), uy = bilinear(vy, g.nx, g.ny, mx, my);
      out(i, j) = bilinear(fv, g.nx, g.ny, i - cx * ux, j - cy * uy);
    }
  return out;
}

ScalarField donor_cell_transport(const ScalarField& w, const VectorField& v, double dt) {
  const Grid& g = w.grid();
  ScalarField out = w;
  // Sweep the interior faces once, moving mass between neighbours.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      const double u = 0.5 * (v(i, j).x + v(i + 1, j).x);
      const double moved = dt / g.hx() * u * (u > 0 ? w(i, j) : w(i + 1, j));
      out(i, j) -= moved;
      out(i + 1, j) += moved;
    }
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double u = 0.5 * (v(i, j).y + v(i, j + 1).y);
      const double moved = dt / g.hy() * u * (u > 0 ? w(i, j) : w(i, j + 1));
      out(i, j) -= moved;
      out(i, j + 1) += moved;
    }
  return out;
}

double integrate(const ScalarField& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s += f(i, j);
  return s * g.cell_volume();
}

}  // namespace eplast::reference
