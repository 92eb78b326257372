#pragma once

#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

#include "eplast/tensor.hpp"

namespace eplast {

struct Grid {
  int nx = 64;
  int ny = 64;
  double lx = 1.0;
  double ly = 1.0;

  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  double h(int axis) const { return axis == 0 ? hx() : hy(); }
  int n(int axis) const { return axis == 0 ? nx : ny; }
  double cell_volume() const { return hx() * hy(); }
  int cells() const { return nx * ny; }
  // Cell centre; valid for ghost indices -1 and n as well.
  Vec2 center(int i, int j) const { return {(i + 0.5) * hx(), (j + 0.5) * hy()}; }
  bool on_boundary(int i, int j) const { return i == 0 || j == 0 || i == nx - 1 || j == ny - 1; }

  void validate() const;
  friend bool operator==(const Grid&, const Grid&) = default;
};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }
inline bool is_finite(const Tensor2& t) { return all_finite(t); }
bool is_finite(const Tensor3& t);

// Cell-centred values with one ghost layer on every side. Indices run
// over [-1, n]; interior cells are [0, n).
template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g, const T& init = T{})
      : grid_(g), data_(static_cast<std::size_t>(g.nx + 2) * (g.ny + 2), init) {}

  const Grid& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<T> storage() { return data_; }
  std::span<const T> storage() const { return data_; }

  bool all_finite() const {
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i)
        if (!is_finite((*this)(i, j))) return false;
    return true;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + 1) * (grid_.nx + 2) + (i + 1);
  }

  Grid grid_{};
  std::vector<T> data_;
};

using ScalarField = Field<double>;
using VectorField = Field<Vec2>;
using TensorField = Field<Tensor2>;
using HyperField = Field<Tensor3>;

// Copies interior values into a flat array, cell order j-major.
template <class T>
std::vector<T> interior_values(const Field<T>& f) {
  std::vector<T> out;
  out.reserve(f.grid().cells());
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) out.push_back(f(i, j));
  return out;
}

}  // namespace eplast
