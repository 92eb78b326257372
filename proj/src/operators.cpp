#include "eplast/operators.hpp"

#include <sstream>

#include "eplast/error.hpp"

namespace eplast {

void Grid::validate() const {
  if (nx < 8 || ny < 8) throw Error(ErrorKind::validation_error, "grid: nx and ny must be >= 8");
  if (!(lx > 0.0 && ly > 0.0)) throw Error(ErrorKind::validation_error, "grid: extents must be > 0");
}

bool is_finite(const Tensor3& t) {
  for (int a = 0; a < t.dim(); ++a)
    for (int b = 0; b < t.dim(); ++b)
      for (int k = 0; k < t.dim(); ++k)
        if (!std::isfinite(t(a, b, k))) return false;
  return true;
}

namespace {

template <class Out, class Body>
Field<Out> per_cell(const Grid& g, Body&& body) {
  Field<Out> out(g);
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) out(i, j) = body(i, j);
  });
  return out;
}

}  // namespace

VectorField gradient(const ScalarField& f, Ghost g) {
  return per_cell<Vec2>(f.grid(), [&](int i, int j) {
    return Vec2{central(f, i, j, 0, g), central(f, i, j, 1, g)};
  });
}

TensorField gradient(const VectorField& v, Ghost g) {
  return per_cell<Tensor2>(v.grid(), [&](int i, int j) {
    const Vec2 dx = central(v, i, j, 0, g), dy = central(v, i, j, 1, g);
    return Tensor2(2, {dx.x, dy.x, dx.y, dy.y});
  });
}

HyperField gradient(const TensorField& A, Ghost g) {
  return per_cell<Tensor3>(A.grid(), [&](int i, int j) {
    const Tensor2 dx = central(A, i, j, 0, g), dy = central(A, i, j, 1, g);
    Tensor3 h(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        h(a, b, 0) = dx(a, b);
        h(a, b, 1) = dy(a, b);
      }
    return h;
  });
}

ScalarField divergence(const VectorField& v, Ghost g) {
  return per_cell<double>(v.grid(), [&](int i, int j) {
    return central(v, i, j, 0, g).x + central(v, i, j, 1, g).y;
  });
}

VectorField divergence(const TensorField& T, Ghost g) {
  return per_cell<Vec2>(T.grid(), [&](int i, int j) {
    const Tensor2 dx = central(T, i, j, 0, g), dy = central(T, i, j, 1, g);
    return Vec2{dx(0, 0) + dy(0, 1), dx(1, 0) + dy(1, 1)};
  });
}

TensorField divergence(const HyperField& H, Ghost g) {
  return per_cell<Tensor2>(H.grid(), [&](int i, int j) {
    const Tensor3 dx = central(H, i, j, 0, g), dy = central(H, i, j, 1, g);
    Tensor2 out(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out(a, b) = dx(a, b, 0) + dy(a, b, 1);
    return out;
  });
}

ScalarField gradient_transpose(const VectorField& v, Ghost policy) {
  return per_cell<double>(v.grid(), [&](int i, int j) {
    return central_transpose(v, i, j, 0, policy).x + central_transpose(v, i, j, 1, policy).y;
  });
}

VectorField gradient_transpose(const TensorField& S, Ghost policy) {
  return per_cell<Vec2>(S.grid(), [&](int i, int j) {
    const Tensor2 tx = central_transpose(S, i, j, 0, policy), ty = central_transpose(S, i, j, 1, policy);
    return Vec2{tx(0, 0) + ty(0, 1), tx(1, 0) + ty(1, 1)};
  });
}

TensorField gradient_transpose(const HyperField& H, Ghost policy) {
  return per_cell<Tensor2>(H.grid(), [&](int i, int j) {
    const Tensor3 tx = central_transpose(H, i, j, 0, policy), ty = central_transpose(H, i, j, 1, policy);
    Tensor2 out(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out(a, b) = tx(a, b, 0) + ty(a, b, 1);
    return out;
  });
}

TensorField sym_velocity_gradient(const VectorField& v, Ghost g) {
  return per_cell<Tensor2>(v.grid(), [&](int i, int j) {
    const Vec2 dx = central(v, i, j, 0, g), dy = central(v, i, j, 1, g);
    const double off = 0.5 * (dy.x + dx.y);
    return Tensor2(2, {dx.x, off, off, dy.y});
  });
}

TensorField p_laplacian_operator(const TensorField& e, double nu, double exponent) {
  HyperField flux = gradient(e, Ghost::mirror);
  parallel_rows(e.ny(), [&](int j) {
    for (int i = 0; i < e.nx(); ++i) {
      Tensor3& h = flux(i, j);
      const double n = norm(h);
      const double c = exponent == 2.0 ? nu : (n > 0.0 ? nu * std::pow(n, exponent - 2.0) : 0.0);
      h *= c;
    }
  });
  TensorField out = gradient_transpose(flux, Ghost::mirror);
  parallel_rows(e.ny(), [&](int j) {
    for (int i = 0; i < e.nx(); ++i) out(i, j) *= -1.0;
  });
  return out;
}

double cfl_number(const VectorField& v, double dt) {
  const Grid& g = v.grid();
  const double h = std::min(g.hx(), g.hy());
  double vmax = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) vmax = std::max(vmax, norm(v(i, j)));
  return vmax * dt / h;
}

Departures trace_departures(const VectorField& v, double dt) {
  const Grid& g = v.grid();
  Departures d{g, std::vector<Vec2>(static_cast<std::size_t>(g.cells()))};
  const double sx = dt / g.hx(), sy = dt / g.hy();
  parallel_rows(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 u = v(i, j);
      const double mi = i - 0.5 * sx * u.x, mj = j - 0.5 * sy * u.y;
      const Vec2 um = interpolate(v, mi, mj);
      d.points[static_cast<std::size_t>(j) * g.nx + i] = {i - sx * um.x, j - sy * um.y};
    }
  });
  return d;
}

}  // namespace eplast
