#pragma once

// Fixed-size 3-vector / 3x3 matrix algebra used throughout the library.
// Matrices are stored row-major; that order is also the serialization order.

#include <array>
#include <cmath>
#include <cstddef>

namespace attitude {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }
  constexpr double& operator[](std::size_t i) {
    return i == 0 ? x : (i == 1 ? y : z);
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

struct Mat3 {
  std::array<double, 9> a{};

  constexpr double operator()(std::size_t r, std::size_t c) const {
    return a[3 * r + c];
  }
  constexpr double& operator()(std::size_t r, std::size_t c) {
    return a[3 * r + c];
  }

  static constexpr Mat3 zero() { return Mat3{}; }
  static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Mat3 diag(double d0, double d1, double d2) {
    Mat3 m;
    m.a[0] = d0;
    m.a[4] = d1;
    m.a[8] = d2;
    return m;
  }
  static constexpr Mat3 rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return Mat3{{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

// ---- Vec3 arithmetic -------------------------------------------------------

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& v) {
  return {s * v.x, s * v.y, s * v.z};
}
constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// ---- Mat3 arithmetic -------------------------------------------------------

constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = a.a[i] + b.a[i];
  return r;
}
constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = a.a[i] - b.a[i];
  return r;
}
constexpr Mat3 operator-(const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = -a.a[i];
  return r;
}
constexpr Mat3 operator*(double s, const Mat3& m) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = s * m.a[i];
  return r;
}
constexpr Mat3 operator*(const Mat3& m, double s) { return s * m; }

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}
constexpr Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

constexpr Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}
constexpr double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }
constexpr double det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}
constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  return Mat3::rows(a.x * b, a.y * b, a.z * b);
}

/// Frobenius inner product <A, B> = sum_ij A_ij B_ij = tr(A^T B).
constexpr double frob_inner(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 9; ++i) s += a.a[i] * b.a[i];
  return s;
}
inline double frob_norm(const Mat3& m) { return std::sqrt(frob_inner(m, m)); }

bool is_finite(const Vec3& v);
bool is_finite(const Mat3& m);

// ---- so(3) -----------------------------------------------------------------

/// Maps v to the skew matrix with hat(v) w = v x w.
constexpr Mat3 hat(const Vec3& v) {
  return Mat3{{0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0}};
}

/// Inverse of hat. Throws Error(kNotSkew) when ||A + A^T|| exceeds
/// 1e-9 * max(1, ||A||).
Vec3 vee(const Mat3& m);

/// Relative tolerance used by vee() for a matrix of the given size.
double skew_tolerance(const Mat3& m);

struct SymSkew {
  Mat3 sym;
  Mat3 skew;
};

/// A = A_s + A_k with A_s = (A + A^T)/2 and A_k = (A - A^T)/2.
constexpr SymSkew sym_skew_split(const Mat3& m) {
  const Mat3 t = transpose(m);
  return {0.5 * (m + t), 0.5 * (m - t)};
}

/// vee of the skew part; never throws.
constexpr Vec3 skew_vee(const Mat3& m) {
  return {0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
          0.5 * (m(1, 0) - m(0, 1))};
}

// ---- SO(3) -----------------------------------------------------------------

inline constexpr double kTolSo3 = 1e-9;
inline constexpr double kTolUnit = 1e-9;

/// exp(angle * hat(axis)) = I + sin(angle) hat(axis) + (1 - cos(angle)) hat(axis)^2.
/// Throws Error(kNotUnitAxis) if | ||axis|| - 1 | > kTolUnit.
Mat3 rodrigues_exp(const Vec3& axis, double angle);

/// max(||R^T R - I||, |det R - 1|).
double so3_residual(const Mat3& r);

inline bool is_rotation(const Mat3& r, double tol = kTolSo3) {
  return so3_residual(r) <= tol;
}

}  // namespace attitude
