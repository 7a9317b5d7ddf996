/// @file vec.hpp
/// Small fixed-size linear algebra used throughout: 3-vectors for ambient
/// points/tangents and symmetric 3x3 matrices for metric tensors.

#ifndef LOXOFORGE_VEC_HPP
#define LOXOFORGE_VEC_HPP

#include <array>
#include <cmath>

namespace lox {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

/// Symmetric 3x3 matrix in row-major order; used for metric tensors g_ij.
struct Mat3 {
  std::array<double, 9> m{};  // m[3*i+j]

  double& operator()(int i, int j) { return m[3 * i + j]; }
  double operator()(int i, int j) const { return m[3 * i + j]; }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }

  static Mat3 diagonal(double a, double b, double c) {
    Mat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  /// r += s * (v v^T): rank-one update, used to add terms like (eta)^2 to a
  /// metric written as base + one-form squared.
  void add_outer(const Vec3& v, double s = 1.0) {
    const double c[3] = {v.x, v.y, v.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[3 * i + j] += s * c[i] * c[j];
  }
};

/// Bilinear form w1^T G w2.
inline double quad_form(const Mat3& g, const Vec3& w1, const Vec3& w2) {
  const double a[3] = {w1.x, w1.y, w1.z};
  const double b[3] = {w2.x, w2.y, w2.z};
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i] * g(i, j) * b[j];
  return s;
}

}  // namespace lox

#endif  // LOXOFORGE_VEC_HPP
