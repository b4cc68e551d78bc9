#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "poncelet/error.hpp"
#include "poncelet/mat3.hpp"

namespace poncelet {

// Conic u^T C u = 0 with u = (x, y, 1); only the upper triangle is stored.
struct SymmetricConic {
  double c11 = 0, c12 = 0, c13 = 0, c22 = 0, c23 = 0, c33 = 0;

  static SymmetricConic diag(double a, double b, double c) { return {a, 0, 0, b, 0, c}; }

  // Symmetrizes m by averaging off-diagonal pairs.
  static SymmetricConic from_matrix(const Mat3& m) {
    return {m[0][0], (m[0][1] + m[1][0]) / 2, (m[0][2] + m[2][0]) / 2,
            m[1][1], (m[1][2] + m[2][1]) / 2, m[2][2]};
  }

  Mat3 matrix() const { return {{{c11, c12, c13}, {c12, c22, c23}, {c13, c23, c33}}}; }

  double eval(const Vec3& u) const { return dot(u, matrix() * u); }

  SymmetricConic scaled(double s) const { return {s * c11, s * c12, s * c13, s * c22, s * c23, s * c33}; }

  friend SymmetricConic operator+(const SymmetricConic& a, const SymmetricConic& b) {
    return {a.c11 + b.c11, a.c12 + b.c12, a.c13 + b.c13, a.c22 + b.c22, a.c23 + b.c23, a.c33 + b.c33};
  }
};

enum class EllipseDefect { minor_not_pd, det_nonnegative };

// A conic known to satisfy the (+,+,-) signature of a real ellipse.
class Ellipse {
 public:
  const SymmetricConic& conic() const { return c_; }
  Mat3 matrix() const { return c_.matrix(); }

 private:
  explicit Ellipse(const SymmetricConic& c) : c_(c) {}
  SymmetricConic c_;
  friend Ellipse validate_ellipse(const SymmetricConic&);
};

inline Ellipse validate_ellipse(const SymmetricConic& c) {
  if (!(c.c11 > 0) || !(c.c11 * c.c22 - c.c12 * c.c12 > 0)) fail(ErrorKind::NotAnEllipse, "minor_not_pd");
  if (!(det(c.matrix()) < 0)) fail(ErrorKind::NotAnEllipse, "det_nonnegative");
  return Ellipse(c);
}

enum class PointClass { Inside, On, Outside };

inline constexpr double tol_on = 1e-9;

// Scale-free value of u^T C u, negative inside.
inline double relative_level(const Ellipse& e, PlanePoint p) {
  Vec3 u = homogeneous(p);
  return e.conic().eval(u) / (frobenius(e.matrix()) * dot(u, u));
}

inline PointClass classify_point(const Ellipse& e, PlanePoint p) {
  double q = relative_level(e, p);
  if (std::fabs(q) <= tol_on) return PointClass::On;
  return q < 0 ? PointClass::Inside : PointClass::Outside;
}

// Line a x + b y + c = 0.
struct Line {
  double a = 0, b = 0, c = 0;
  Vec3 vec() const { return {a, b, c}; }
};

struct Tangent {
  Line line;
  PlanePoint touch;
};

// The two tangents from an exterior point, solved in the dual (line) conic.
inline std::array<Tangent, 2> tangent_lines_from_point(const Ellipse& e, PlanePoint z) {
  if (classify_point(e, z) != PointClass::Outside) fail(ErrorKind::PointNotOutside);
  const Mat3 A = adjugate(e.matrix());
  const Vec3 p = homogeneous(z);
  // Every line through p is s*q1 + t*q2.
  const Vec3 q1 = cross(p, Vec3{1, 0, 0});
  const Vec3 q2 = cross(p, Vec3{0, 1, 0});
  const double a = dot(q1, A * q1), b = dot(q1, A * q2), c = dot(q2, A * q2);
  const double disc = b * b - a * c;
  if (!(disc > 0)) fail(ErrorKind::PointNotOutside, "tangent discriminant not positive");
  const double w = -(b + std::copysign(std::sqrt(disc), b));
  const std::array<std::pair<double, double>, 2> roots{{{w, a}, {c, w}}};

  std::array<Tangent, 2> out{};
  for (int i = 0; i < 2; ++i) {
    auto [s, t] = roots[i];
    Vec3 l{s * q1[0] + t * q2[0], s * q1[1] + t * q2[1], s * q1[2] + t * q2[2]};
    double n = std::hypot(l[0], l[1]);
    l = {l[0] / n, l[1] / n, l[2] / n};
    Vec3 h = A * l;
    out[i] = {{l[0], l[1], l[2]}, {h[0] / h[2], h[1] / h[2]}};
  }
  return out;
}

// Center, semi-axes and axis angle of an ellipse given by its matrix.
struct EllipseShape {
  PlanePoint center;
  double a, b;   // semi-axes along the rotated x and y directions
  double angle;  // rotation of the first axis

  PlanePoint at(double t) const {
    double ca = std::cos(angle), sa = std::sin(angle);
    double x = a * std::cos(t), y = b * std::sin(t);
    return {center.x + ca * x - sa * y, center.y + sa * x + ca * y};
  }
};

inline EllipseShape shape_of(const Ellipse& e) {
  const auto& c = e.conic();
  double d = c.c11 * c.c22 - c.c12 * c.c12;
  double x0 = (-c.c22 * c.c13 + c.c12 * c.c23) / d;
  double y0 = (c.c12 * c.c13 - c.c11 * c.c23) / d;
  double k = -(c.c13 * x0 + c.c23 * y0 + c.c33);  // level of the centered quadratic form
  double angle = 0.5 * std::atan2(2 * c.c12, c.c11 - c.c22);
  double ca = std::cos(angle), sa = std::sin(angle);
  double l1 = c.c11 * ca * ca + 2 * c.c12 * ca * sa + c.c22 * sa * sa;
  double l2 = c.c11 * sa * sa - 2 * c.c12 * ca * sa + c.c22 * ca * ca;
  return {{x0, y0}, std::sqrt(k / l1), std::sqrt(k / l2), angle};
}

inline std::vector<PlanePoint> sample_ellipse(const Ellipse& e, int n) {
  auto s = shape_of(e);
  std::vector<PlanePoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(s.at(2 * std::numbers::pi * i / n));
  return pts;
}

// Second intersection of the line through z with direction d, for z on the conic.
inline PlanePoint second_intersection(const Ellipse& e, PlanePoint z, PlanePoint d) {
  const Mat3 C = e.matrix();
  const Vec3 p = homogeneous(z), v{d.x, d.y, 0};
  double a = dot(v, C * v), b = dot(v, C * p), c = dot(p, C * p);
  double disc = b * b - a * c;
  if (!(a > 0) || disc < 0) fail(ErrorKind::NoIntersection);
  double t = -(b + std::copysign(std::sqrt(disc), b)) / a;
  return {z.x + t * d.x, z.y + t * d.y};
}

}  // namespace poncelet
