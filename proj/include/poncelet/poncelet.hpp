#pragma once

// Poncelet maps on a pencil of nested ellipses.

#include <cmath>
#include <numbers>
#include <vector>

#include "poncelet/conics.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/error.hpp"
#include "poncelet/pencil.hpp"

namespace poncelet {

inline constexpr double tol_close = 1e-7;

struct PolygonOrbit {
  std::vector<PlanePoint> points;
  int steps = 0;
  int winding = 0;
  double closure_residual = 0;  // measured in the standard chart
  bool closed = false;
  double rho = 0;
};

// Standard Poncelet map on the unit circle around S_e^f.
inline PlanePoint standard_map(double e, double f, PlanePoint p) {
  if (!(e > 0 && e < 1) || !(f >= 0 && f <= e)) fail(ErrorKind::InvalidParameter, "need 0 <= f <= e < 1");
  if (std::fabs(p.x * p.x + p.y * p.y - 1) > 1e-9) fail(ErrorKind::OffCircle);
  const double e2 = e * e, f2 = f * f, f4 = f2 * f2;
  const double A1 = 2 * f * std::sqrt((1 - f2) * (e2 - f2));
  const double A2 = e2 - f4;
  const double A3 = e2 + f4 - 2 * f2;
  const double A4 = e2 * (1 - 2 * f2) + f4;
  const double X = p.x, Y = p.y;
  const double s = std::sqrt(std::fmax(0.0, 1 - e2 * Y * Y));
  const double D = A2 * A2 - A1 * A1 * e2 * Y * Y;
  return {-(A1 * A4 * Y * s + A2 * A3 * X) / D, (A1 * A2 * X * s - A3 * A4 * Y) / D};
}

// Spectrum-level f(nu): the standard-pencil parameter of the member nu.
inline double f_of_nu(const Spectrum& s, PencilParam nu) {
  double e = std::sqrt((s.l1 - s.l2) / (s.l1 - s.l3));
  return e * std::sqrt((nu.nu1 + s.l3 * nu.nu2) / (nu.nu1 + s.l2 * nu.nu2));
}

// Rotation number of P_nu. Accepts l1 = l2 (circular modulus e = 0).
inline double rho_of_nu(const Spectrum& s, PencilParam nu) {
  if (!(s.l3 > 0 && s.l2 > s.l3 && s.l1 >= s.l2)) fail(ErrorKind::DegenerateSpectrum);
  switch (classify_param(s, nu)) {
    case ParamKind::Outer: return 0.0;
    case ParamKind::Limiting: return 0.5;
    case ParamKind::Interior: break;
    case ParamKind::Invalid: fail(ErrorKind::InvalidParameter, "parameter outside the validity cone");
  }
  double e = std::sqrt((s.l1 - s.l2) / (s.l1 - s.l3));
  double arg = std::sqrt((s.l1 - s.l3) * nu.nu2 / (s.l1 * nu.nu2 + nu.nu1));
  return ellint_F(std::asin(std::fmin(arg, 1.0)), e) / (2 * ellint_K(e));
}

inline double rho_of_nu(const Pencil& P, PencilParam nu) { return rho_of_nu(P.lambda, nu); }

inline PencilParam invert_rho(const Spectrum& s, double ell) {
  if (!(ell > 0 && ell < 0.5)) fail(ErrorKind::InvalidRotation, "rotation number must lie in (0, 1/2)");
  double e = pencil_eccentricity(s);
  auto v = jacobi(2 * ellint_K(e) * ell, e);
  return {s.l1 * v.cn * v.cn - s.l3, v.sn * v.sn};
}

inline PencilParam invert_rho(const Pencil& P, double ell) { return invert_rho(P.lambda, ell); }

inline double f_of_nu(const Pencil& P, PencilParam nu) { return f_of_nu(P.lambda, nu); }

// Covering map of C1 lifting every P_nu to a translation.
inline PlanePoint covering(const Pencil& P, double theta) {
  auto v = jacobi(4 * ellint_K(P.e) * theta, P.e);
  return P.from_standard({v.cn, v.sn});
}

inline void require_on_outer(const Pencil& P, PlanePoint z) {
  if (classify_point(P.C1, z) != PointClass::On) fail(ErrorKind::OffOuterConic);
}

// Lift of z in C1 to the covering parameter, in [-1/2, 1/2].
inline double lift(const Pencil& P, PlanePoint z) {
  PlanePoint w = P.to_standard(z);
  return ellint_F(std::atan2(w.y, w.x), P.e) / (4 * ellint_K(P.e));
}

enum class Direction { Forward, Backward };

// Geometric step: the chord from z tangent to C_nu, with C_nu on the left (Forward) or right.
inline PlanePoint poncelet_step(const Pencil& P, PencilParam nu, PlanePoint z, Direction dir = Direction::Forward) {
  require_on_outer(P, z);
  const double side = dir == Direction::Forward ? 1.0 : -1.0;
  PlanePoint d;
  switch (P.classify(nu)) {
    case ParamKind::Limiting: {
      PlanePoint L = P.limiting_point();
      d = {L.x - z.x, L.y - z.y};
      break;
    }
    case ParamKind::Interior: {
      Ellipse inner = member(P, nu);
      PlanePoint c = shape_of(inner).center;
      auto tangents = tangent_lines_from_point(inner, z);
      bool found = false;
      for (const auto& t : tangents) {
        PlanePoint dt{t.touch.x - z.x, t.touch.y - z.y};
        double turn = dt.x * (c.y - z.y) - dt.y * (c.x - z.x);
        if (side * turn > 0) {
          d = dt;
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorKind::NoIntersection, "no tangent with the requested orientation");
      break;
    }
    default: fail(ErrorKind::InvalidParameter, "step needs an interior or limiting member");
  }
  return second_intersection(P.C1, z, d);
}

// Same step through the standard chart: M o P_e^f o M^-1.
inline PlanePoint conjugate_step(const Pencil& P, PencilParam nu, PlanePoint z) {
  require_on_outer(P, z);
  double f = P.classify(nu) == ParamKind::Limiting ? 0.0 : f_of_nu(P, nu);
  if (P.classify(nu) == ParamKind::Invalid || P.classify(nu) == ParamKind::Outer)
    fail(ErrorKind::InvalidParameter, "step needs an interior or limiting member");
  PlanePoint w = P.to_standard(z);
  double n = std::hypot(w.x, w.y);
  return P.from_standard(standard_map(P.e, f, {w.x / n, w.y / n}));
}

// Flow commuting with every Poncelet map of the pencil.
inline PlanePoint symmetry_flow(const Pencil& P, double t, PlanePoint z) {
  require_on_outer(P, z);
  return covering(P, lift(P, z) + t);
}

inline double standard_angle(const Pencil& P, PlanePoint z) {
  PlanePoint w = P.to_standard(z);
  return std::atan2(w.y, w.x);
}

// Counter-clockwise angle travelled from a to b in the standard chart, in [0, 2*pi).
inline double angle_advance(const Pencil& P, PlanePoint a, PlanePoint b) {
  double d = standard_angle(P, b) - standard_angle(P, a);
  d = std::remainder(d, 2 * std::numbers::pi);
  return d < 0 ? d + 2 * std::numbers::pi : d;
}

inline double chart_distance(const Pencil& P, PlanePoint a, PlanePoint b) {
  return distance(P.to_standard(a), P.to_standard(b));
}

inline double estimate_rotation(const Pencil& P, PencilParam nu, int n) {
  if (n < 100) fail(ErrorKind::InvalidParameter, "need at least 100 iterates");
  auto k = P.classify(nu);
  if (k != ParamKind::Interior && k != ParamKind::Limiting) fail(ErrorKind::InvalidParameter, "no dynamics for this member");
  PlanePoint z = covering(P, 0.0);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    PlanePoint next = poncelet_step(P, nu, z);
    total += angle_advance(P, z, next);
    z = next;
  }
  return total / (2 * std::numbers::pi * n);
}

// Iterates until the orbit returns to z0 or max_steps is reached.
inline PolygonOrbit polygon(const Pencil& P, PencilParam nu, PlanePoint z0, int max_steps) {
  PolygonOrbit orbit;
  orbit.rho = rho_of_nu(P, nu);
  orbit.points.push_back(z0);
  PlanePoint z = z0;
  double total = 0;
  for (int i = 0; i < max_steps; ++i) {
    PlanePoint next = poncelet_step(P, nu, z);
    total += angle_advance(P, z, next);
    z = next;
    orbit.points.push_back(z);
    orbit.steps = i + 1;
    orbit.closure_residual = chart_distance(P, z, z0);
    if (orbit.closure_residual < tol_close) {
      orbit.closed = true;
      break;
    }
  }
  orbit.winding = static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
  return orbit;
}

struct ScheduleEntry {
  PencilParam nu;
  int k = 1;  // negative powers use the inverse map
};

inline PolygonOrbit run_composition(const Pencil& P, const std::vector<ScheduleEntry>& schedule, PlanePoint z0) {
  PolygonOrbit orbit;
  orbit.points.push_back(z0);
  PlanePoint z = z0;
  double total = 0;
  for (const auto& entry : schedule) {
    orbit.rho += entry.k * rho_of_nu(P, entry.nu);
    Direction dir = entry.k >= 0 ? Direction::Forward : Direction::Backward;
    for (int i = 0; i < std::abs(entry.k); ++i) {
      PlanePoint next = poncelet_step(P, entry.nu, z, dir);
      double adv = angle_advance(P, z, next);
      total += dir == Direction::Forward ? adv : adv - 2 * std::numbers::pi;
      z = next;
      orbit.points.push_back(z);
      ++orbit.steps;
    }
  }
  orbit.closure_residual = chart_distance(P, z, z0);
  orbit.closed = orbit.closure_residual < tol_close;
  orbit.winding = static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
  return orbit;
}

}  // namespace poncelet
