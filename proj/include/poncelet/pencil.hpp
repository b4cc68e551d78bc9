#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "poncelet/conics.hpp"
#include "poncelet/error.hpp"
#include "poncelet/mat3.hpp"

namespace poncelet {

// Generalized eigenvalues, descending.
struct Spectrum {
  double l1 = 0, l2 = 0, l3 = 0;
};

inline constexpr double tol_degenerate = 1e-9;

inline void require_spectrum(const Spectrum& s) {
  if (!(s.l3 > 0) || !(s.l2 > s.l3) || !(s.l1 > s.l2)) fail(ErrorKind::DegenerateSpectrum, "need l1 > l2 > l3 > 0");
}

inline double pencil_eccentricity(const Spectrum& s) {
  require_spectrum(s);
  return std::sqrt((s.l1 - s.l2) / (s.l1 - s.l3));
}

// Projective pencil coordinate nu = (nu1, nu2) of the member nu1*C1 + nu2*C2.
struct PencilParam {
  double nu1 = 0, nu2 = 0;

  PencilParam canonical() const {
    double n = std::hypot(nu1, nu2);
    double s = (nu2 < 0 || (nu2 == 0 && nu1 < 0)) ? -1.0 : 1.0;
    return {s * nu1 / n, s * nu2 / n};
  }
};

// Signed cross product; positive when the mu member lies inside the nu member.
inline double nesting_order(PencilParam nu, PencilParam mu) { return nu.nu1 * mu.nu2 - nu.nu2 * mu.nu1; }

enum class ParamKind { Outer, Interior, Limiting, Invalid };

inline ParamKind classify_param(const Spectrum& s, PencilParam nu) {
  double scale = std::fabs(nu.nu1) + s.l1 * std::fabs(nu.nu2);
  if (!(scale > 0) || !std::isfinite(scale)) return ParamKind::Invalid;
  if (std::fabs(nu.nu2) <= 1e-14 * std::fabs(nu.nu1)) return nu.nu1 > 0 ? ParamKind::Outer : ParamKind::Invalid;
  if (nu.nu2 < 0) return ParamKind::Invalid;
  double g = nu.nu1 + s.l3 * nu.nu2;
  if (std::fabs(g) <= 1e-12 * scale) return ParamKind::Limiting;
  return g > 0 ? ParamKind::Interior : ParamKind::Invalid;
}

inline PencilParam dual(const Spectrum& s, PencilParam nu) {
  if (classify_param(s, nu) == ParamKind::Invalid) fail(ErrorKind::InvalidParameter, "dual of an invalid parameter");
  return {-s.l3 * nu.nu1 + (s.l1 * s.l2 - s.l1 * s.l3 - s.l2 * s.l3) * nu.nu2, nu.nu1 + s.l3 * nu.nu2};
}

// Characteristic cubic det(lambda*A - B) = k3 l^3 + k2 l^2 + k1 l + k0.
inline std::array<double, 4> characteristic_cubic(const Mat3& A, const Mat3& B) {
  return {-det(B), trace(A * adjugate(B)), -trace(adjugate(A) * B), det(A)};
}

inline Spectrum generalized_eigenvalues(const Ellipse& C1, const Ellipse& C2) {
  auto k = characteristic_cubic(C1.matrix(), C2.matrix());
  double a = k[2] / k[3], b = k[1] / k[3], c = k[0] / k[3];
  double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
  if (!(p < 0)) fail(ErrorKind::DegenerateSpectrum, "repeated or complex eigenvalues");
  double arg = 3 * q / (2 * p) * std::sqrt(-3 / p);
  if (arg > 1 + 1e-9 || arg < -1 - 1e-9) fail(ErrorKind::DegenerateSpectrum, "complex eigenvalues");
  arg = std::clamp(arg, -1.0, 1.0);
  double r = 2 * std::sqrt(-p / 3), th = std::acos(arg) / 3;
  std::array<double, 3> l;
  for (int i = 0; i < 3; ++i) {
    double x = r * std::cos(th - 2 * std::numbers::pi * i / 3) - a / 3;
    for (int it = 0; it < 2; ++it) {
      double f = ((x + a) * x + b) * x + c, df = (3 * x + 2 * a) * x + b;
      if (df != 0) x -= f / df;
    }
    l[i] = x;
  }
  std::sort(l.begin(), l.end(), std::greater<>());
  Spectrum s{l[0], l[1], l[2]};
  if (!(s.l3 > 0)) fail(ErrorKind::DegenerateSpectrum, "non-positive eigenvalue");
  double gap = tol_degenerate * s.l1;
  if (s.l1 - s.l2 < gap || s.l2 - s.l3 < gap) fail(ErrorKind::DegenerateSpectrum, "eigenvalues too close");
  return s;
}

// Fractional-linear action of M on the affine chart.
inline PlanePoint apply_homography(const Mat3& M, PlanePoint p) {
  Vec3 u = homogeneous(p);
  Vec3 h = M * u;
  if (std::fabs(h[2]) < 1e-13 * frobenius(M) * norm(u)) fail(ErrorKind::HomographySingularity);
  return {h[0] / h[2], h[1] / h[2]};
}

// Null vector of a rank-two symmetric matrix: the largest cross product of two rows.
inline Vec3 null_vector(const Mat3& m) {
  std::array<Vec3, 3> c{cross(m[0], m[1]), cross(m[0], m[2]), cross(m[1], m[2])};
  return *std::max_element(c.begin(), c.end(), [](const Vec3& x, const Vec3& y) { return norm(x) < norm(y); });
}

inline constexpr int sa3_samples = 64;
inline constexpr double sa3_margin = 1e-10;

class Pencil {
 public:
  Pencil(const Ellipse& c1, const Ellipse& c2) : C1(c1), C2(c2) {
    for (const auto& p : sample_ellipse(C2, sa3_samples))
      if (!(relative_level(C1, p) < -sa3_margin)) fail(ErrorKind::NotNested, "inner conic leaves the outer one");

    lambda = generalized_eigenvalues(C1, C2);
    e = pencil_eccentricity(lambda);

    const Mat3 A = C1.matrix(), B = C2.matrix();
    const double l[3] = {lambda.l1, lambda.l2, lambda.l3};
    for (int i = 0; i < 3; ++i) {
      Vec3 v = null_vector(l[i] * A - B);
      double q = dot(v, A * v);
      if ((i < 2) != (q > 0)) fail(ErrorKind::NotNested, "unexpected signature");
      double s = 1 / std::sqrt(std::fabs(q));
      for (int r = 0; r < 3; ++r) M[r][i] = s * v[r];
    }
    auto flip = [this](int c) {
      for (int r = 0; r < 3; ++r) M[r][c] = -M[r][c];
    };
    int big = 0;
    for (int r = 1; r < 3; ++r)
      if (std::fabs(M[r][0]) > std::fabs(M[big][0])) big = r;
    if (M[big][0] < 0) flip(0);
    if (M[2][2] < 0) flip(2);
    if (det(M) < 0) flip(1);
    Minv = inverse(M);
  }

  Ellipse C1, C2;
  Spectrum lambda;
  Mat3 M{}, Minv{};
  double e = 0;

  PlanePoint from_standard(PlanePoint w) const { return apply_homography(M, w); }
  PlanePoint to_standard(PlanePoint z) const { return apply_homography(Minv, z); }
  PlanePoint limiting_point() const { return from_standard({0, 0}); }
  ParamKind classify(PencilParam nu) const { return classify_param(lambda, nu); }
};

inline Pencil build_pencil(const SymmetricConic& c1, const SymmetricConic& c2) {
  return Pencil(validate_ellipse(c1), validate_ellipse(c2));
}

// Outer unit circle and inner diag(l1, l2, -l3).
inline Pencil diagonal_pencil(const Spectrum& s) {
  require_spectrum(s);
  return build_pencil(SymmetricConic::diag(1, 1, -1), SymmetricConic::diag(s.l1, s.l2, -s.l3));
}

// The confocal ellipse E(eps): eps^2 x^2 + eps^2/(1-eps^2) y^2 = 1, foci at (+-1, 0).
inline SymmetricConic confocal_conic(double eps) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::InvalidParameter, "confocal eccentricity must lie in (0, 1)");
  return SymmetricConic::diag(eps * eps, eps * eps / (1 - eps * eps), -1);
}

// Billiard table E(f) with caustic E(e).
inline Pencil confocal_pencil(double e, double f) {
  if (!(0 < f && f < e && e < 1)) fail(ErrorKind::NotInDelta, "need 0 < f < e < 1");
  return build_pencil(confocal_conic(f), confocal_conic(e));
}

inline SymmetricConic member_conic(const Pencil& P, PencilParam nu) {
  return P.C1.conic().scaled(nu.nu1) + P.C2.conic().scaled(nu.nu2);
}

inline Ellipse member(const Pencil& P, PencilParam nu) {
  switch (P.classify(nu)) {
    case ParamKind::Outer: return P.C1;
    case ParamKind::Interior: return validate_ellipse(member_conic(P, nu));
    case ParamKind::Limiting: {
      auto z = P.limiting_point();
      throw LimitingPointError(z.x, z.y);
    }
    case ParamKind::Invalid: break;
  }
  fail(ErrorKind::InvalidParameter, "parameter outside the validity cone");
}

inline PencilParam dual(const Pencil& P, PencilParam nu) { return dual(P.lambda, nu); }

// Eccentricity of the pair (C_nu, C_mu) for C_mu inside C_nu.
inline double relative_eccentricity(const Pencil& P, PencilParam nu, PencilParam mu) {
  for (auto p : {nu, mu})
    if (auto k = P.classify(p); k != ParamKind::Interior && k != ParamKind::Outer)
      fail(ErrorKind::InvalidParameter, "relative eccentricity needs valid members");
  if (!(nesting_order(nu, mu) > 0)) fail(ErrorKind::NotNested, "mu member is not inside the nu member");
  const auto& s = P.lambda;
  return std::sqrt((nu.nu1 + s.l3 * nu.nu2) / (nu.nu1 + s.l2 * nu.nu2)) * P.e;
}

// Member of S_e^f: (1-f^2)/(1-e^2) X^2 + Y^2 = f^2/e^2.
inline SymmetricConic standard_pencil_member(double e, double f) {
  if (!(e > 0 && e < 1)) fail(ErrorKind::InvalidParameter, "pencil eccentricity must lie in (0, 1)");
  if (!(f >= 0 && f <= e)) fail(ErrorKind::InvalidParameter, "need 0 <= f <= e");
  if (f == 0) throw LimitingPointError(0, 0);
  return SymmetricConic::diag((1 - f * f) / (1 - e * e), 1, -(f * f) / (e * e));
}

struct Mat2 {
  double a11, a12, a21, a22;
  PlanePoint operator()(PlanePoint p) const { return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y}; }
  double det() const { return a11 * a22 - a12 * a21; }
  Mat2 inverse() const {
    double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
};

// Linear map taking E(f) to the unit circle and E(e) to S_e^f.
inline Mat2 confocal_to_standard(double f) {
  if (!(f > 0 && f < 1)) fail(ErrorKind::InvalidParameter, "need 0 < f < 1");
  return {0, f / std::sqrt(1 - f * f), -f, 0};
}

}  // namespace poncelet
