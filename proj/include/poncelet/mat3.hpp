#pragma once

#include <array>
#include <cmath>

namespace poncelet {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct PlanePoint {
  double x = 0, y = 0;
};

inline double distance(PlanePoint a, PlanePoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline Vec3 homogeneous(PlanePoint p) { return {p.x, p.y, 1.0}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Mat3 diag3(double a, double b, double c) { return {{{a, 0, 0}, {0, b, 0}, {0, 0, c}}}; }

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Mat3 operator*(double s, Mat3 m) {
  for (auto& row : m)
    for (auto& x : row) x *= s;
  return m;
}

inline Mat3 operator+(Mat3 a, const Mat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] += b[i][j];
  return a;
}

inline Mat3 operator-(Mat3 a, const Mat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] -= b[i][j];
  return a;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

inline double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Classical adjoint: adj(m) * m = det(m) * I.
inline Mat3 adjugate(const Mat3& m) {
  Mat3 r{};
  r[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  r[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  r[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  r[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  r[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  r[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  r[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  r[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  r[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return r;
}

inline Mat3 inverse(const Mat3& m) { return (1.0 / det(m)) * adjugate(m); }

inline double trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

inline double frobenius(const Mat3& m) {
  double s = 0;
  for (const auto& row : m)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::fmax(r, std::fabs(a[i][j] - b[i][j]));
  return r;
}

}  // namespace poncelet
