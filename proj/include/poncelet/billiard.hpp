#pragma once

// Billiards in the ellipse E(f) with confocal caustic E(e).

#include <cmath>
#include <numbers>
#include <utility>

#include "poncelet/elliptic.hpp"
#include "poncelet/error.hpp"
#include "poncelet/mat3.hpp"

namespace poncelet {

struct PhasePoint {
  double phi = 0;  // boundary angle
  double r = 0;    // tangential momentum
};

struct EccPair {
  double e = 0;  // caustic
  double f = 0;  // boundary
};

inline bool in_delta(EccPair p) { return 0 < p.f && p.f < p.e && p.e < 1; }

inline void require_delta(EccPair p) {
  if (!in_delta(p)) fail(ErrorKind::NotInDelta, "need 0 < f < e < 1");
}

inline PlanePoint boundary_point(double f, double phi) {
  return {std::cos(phi) / f, std::sqrt(1 - f * f) * std::sin(phi) / f};
}

inline PlanePoint boundary_tangent(double f, double phi) {
  return {-std::sin(phi) / f, std::sqrt(1 - f * f) * std::cos(phi) / f};
}

inline double boundary_angle(double f, PlanePoint z) {
  double a = std::atan2(z.y * f / std::sqrt(1 - f * f), z.x * f);
  return a < 0 ? a + 2 * std::numbers::pi : a;
}

inline double speed_squared(double f, double phi) {
  double c = std::cos(phi);
  return (1 - f * f * c * c) / (f * f);
}

inline double invariant_H(PhasePoint s) {
  double c = std::cos(s.phi);
  return 0.5 * s.r * s.r + 0.5 * c * c;
}

inline double caustic_of_state(PhasePoint s) {
  double h = invariant_H(s);
  if (!(s.r > 0) || !(h > 0.5)) fail(ErrorKind::NotInUPlus, "need r > 0 and H > 1/2");
  return 1 / std::sqrt(2 * h);
}

// One reflection; returns the next state and the angular advance in (0, 2*pi).
inline std::pair<PhasePoint, double> billiard_step(double f, PhasePoint s) {
  if (!(f > 0 && f < 1)) fail(ErrorKind::InvalidParameter, "boundary eccentricity must lie in (0, 1)");
  double v2 = speed_squared(f, s.phi);
  if (!(s.r * s.r < v2)) fail(ErrorKind::OutOfAnnulus);
  double v = std::sqrt(v2);
  PlanePoint t = boundary_tangent(f, s.phi);
  t = {t.x / v, t.y / v};
  double c = s.r / v, sn = std::sqrt(1 - c * c);
  PlanePoint u{c * t.x - sn * t.y, c * t.y + sn * t.x};  // left normal points inward

  PlanePoint p = boundary_point(f, s.phi);
  double a1 = f * f, a2 = f * f / (1 - f * f);
  double qa = a1 * u.x * u.x + a2 * u.y * u.y;
  double qb = a1 * u.x * p.x + a2 * u.y * p.y;
  double qc = a1 * p.x * p.x + a2 * p.y * p.y - 1;
  double disc = qb * qb - qa * qc;
  if (!(qa > 0) || disc < 0) fail(ErrorKind::NoIntersection);
  double tt = -(qb + std::copysign(std::sqrt(disc), qb)) / qa;
  if (!(tt > 0)) fail(ErrorKind::NoIntersection);
  PlanePoint q{p.x + tt * u.x, p.y + tt * u.y};

  double phi = boundary_angle(f, q);
  double adv = std::remainder(phi - s.phi, 2 * std::numbers::pi);
  if (adv <= 0) adv += 2 * std::numbers::pi;
  PlanePoint g = boundary_tangent(f, phi);
  return {{phi, u.x * g.x + u.y * g.y}, adv};
}

inline PhasePoint billiard_map(double f, PhasePoint s) { return billiard_step(f, s).first; }

// Average angular advance per bounce over n bounces, in turns.
inline double billiard_rotation_estimate(double f, PhasePoint s, int n) {
  double total = 0;
  for (int i = 0; i < n; ++i) {
    auto [next, adv] = billiard_step(f, s);
    total += adv;
    s = next;
  }
  return total / (2 * std::numbers::pi * n);
}

// State at the top co-vertex on the caustic level set H = 1/(2 e^2).
inline PhasePoint caustic_state(EccPair p) {
  require_delta(p);
  return {std::numbers::pi / 2, 1 / p.e};
}

inline double rotation_confocal(EccPair p) {
  require_delta(p);
  double e = p.e, f = p.f;
  double s = std::sqrt((e * e - f * f) / (e * e * (1 - f * f)));
  return ellint_F(std::asin(std::fmin(s, 1.0)), e) / (2 * ellint_K(e));
}

inline double porism_f(double e, double ell) {
  if (!(e > 0 && e <= max_modulus<double>)) fail(ErrorKind::ModulusOutOfRange, "e must lie in (0, 1)");
  if (!(ell > 0 && ell < 0.5)) fail(ErrorKind::InvalidRotation, "rotation number must lie in (0, 1/2)");
  return e * jacobi(2 * ellint_K(e) * ell, e).cd;
}

// Boundaries with half the rotation number and its complement to 1/2.
inline std::pair<double, double> half_rotation(EccPair p) {
  require_delta(p);
  double e = p.e, f0 = p.f;
  double s = std::sqrt((1 - e * e) * (1 - f0 * f0));
  return {std::sqrt(e * (e + f0) / (1 + e * f0 + s)), std::sqrt(e * (e - f0) / (1 - e * f0 + s))};
}

inline EccPair gauss_transform(EccPair p) {
  require_delta(p);
  double g = 2 * std::sqrt(p.e);
  return {g / (1 + p.e), g * p.f / (p.f * p.f + p.e)};
}

// Covering map of E(f) that conjugates the confocal Poncelet map to a rigid rotation.
inline PlanePoint confocal_cover(double theta, EccPair p) {
  require_delta(p);
  auto v = jacobi(4 * ellint_K(p.e) * theta, p.e);
  return {-v.sn / p.f, std::sqrt(1 - p.f * p.f) * v.cn / p.f};
}

// Confocal Poncelet map on E(f): follow the billiard trajectory tangent to E(e).
inline PlanePoint confocal_poncelet_map(EccPair p, PlanePoint z) {
  require_delta(p);
  double phi = boundary_angle(p.f, z);
  double c = std::cos(phi);
  double r2 = 1 / (p.e * p.e) - c * c;
  auto next = billiard_map(p.f, {phi, std::sqrt(r2)});
  return boundary_point(p.f, next.phi);
}

}  // namespace poncelet
