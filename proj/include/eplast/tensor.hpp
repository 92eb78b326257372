#pragma once

// Small dense tensors with a runtime dimension (2 or 3) and the pointwise
// kinematic relations between reference map, plastic distortion and
// elastic strain.

#include <array>
#include <cmath>
#include <initializer_list>

namespace eplast {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double& operator[](int i) { return i == 0 ? x : y; }
  double operator[](int i) const { return i == 0 ? x : y; }

  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

class Tensor2 {
 public:
  Tensor2() = default;
  explicit Tensor2(int dim);

  // Row-major entries; the list length must be dim*dim.
  Tensor2(int dim, std::initializer_list<double> rows);

  static Tensor2 identity(int dim);
  static Tensor2 diag(std::initializer_list<double> entries);

  int dim() const { return d_; }
  double& operator()(int i, int j) { return a_[3 * i + j]; }
  double operator()(int i, int j) const { return a_[3 * i + j]; }

  Tensor2& operator+=(const Tensor2& o) {
    for (int k = 0; k < 9; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Tensor2& operator-=(const Tensor2& o) {
    for (int k = 0; k < 9; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Tensor2& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }
  friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
  friend Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }
  friend Tensor2 operator-(Tensor2 a) { return a *= -1.0; }
  friend Tensor2 operator*(double s, Tensor2 a) { return a *= s; }
  friend Tensor2 operator*(Tensor2 a, double s) { return a *= s; }
  friend Tensor2 operator*(const Tensor2& a, const Tensor2& b);
  friend Vec2 operator*(const Tensor2& a, const Vec2& v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y, a(1, 0) * v.x + a(1, 1) * v.y};
  }
  friend bool operator==(const Tensor2&, const Tensor2&) = default;

 private:
  std::array<double, 9> a_{};
  int d_ = 2;
};

// Third-order tensor; entry (i,j,k) holds the k-th derivative of entry (i,j).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : d_(dim) {}

  int dim() const { return d_; }
  double& operator()(int i, int j, int k) { return a_[9 * i + 3 * j + k]; }
  double operator()(int i, int j, int k) const { return a_[9 * i + 3 * j + k]; }

  Tensor3& operator+=(const Tensor3& o) {
    for (int k = 0; k < 27; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    for (int k = 0; k < 27; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Tensor3& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
  friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::array<double, 27> a_{};
  int d_ = 2;
};

Tensor2 transpose(const Tensor2& a);
double trace(const Tensor2& a);
double contract(const Tensor2& a, const Tensor2& b);  // a:b
double contract(const Tensor3& a, const Tensor3& b);
double norm(const Tensor2& a);  // Frobenius
double norm(const Tensor3& a);
double det(const Tensor2& a);
Tensor2 cofactor(const Tensor2& a);
Tensor2 sym(const Tensor2& a);
Tensor2 dev(const Tensor2& a);

// Throws SingularMatrix when |det a| <= 1e-12 * |a|^d.
Tensor2 inverse(const Tensor2& a);

// Scaling and squaring around a truncated Taylor series.
Tensor2 expm(const Tensor2& a);

bool all_finite(const Tensor2& a);

// F = (grad xi)^-1
Tensor2 deformation_gradient(const Tensor2& grad_xi);

// Fe = (Fp grad xi)^-1
Tensor2 elastic_strain(const Tensor2& Fp, const Tensor2& grad_xi);

// Elastic distortion rate: grad v - Fe Lp Fe^-1.
Tensor2 velocity_gradient_split(const Tensor2& grad_v, const Tensor2& Fe, const Tensor2& Lp);

}  // namespace eplast
