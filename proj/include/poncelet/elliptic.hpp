#pragma once

// Real elliptic integrals and Jacobi elliptic functions of modulus e in [0, 1).
//
// K uses the arithmetic-geometric mean, F and E use Carlson's symmetric forms,
// and sn/cn/dn come from the descending Landen (AGM) recursion.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <vector>

#include "poncelet/error.hpp"

namespace poncelet {

template <std::floating_point T>
struct Modulus {
  T e;
  T ep;  // complementary modulus sqrt(1 - e^2)
};

template <std::floating_point T>
struct JacobiValues {
  T u, sn, cn, dn, am, cd;
};

// Largest modulus accepted before the logarithmic singularity of K.
template <std::floating_point T>
inline constexpr T max_modulus = T(1) - T(1e-9);

template <std::floating_point T>
Modulus<T> modulus(T e) {
  if (!(e >= 0 && e <= max_modulus<T>)) fail(ErrorKind::ModulusOutOfRange, "e must lie in [0, 1)");
  return {e, std::sqrt((T(1) - e) * (T(1) + e))};
}

namespace detail {

template <std::floating_point T>
T carlson_rf(T x, T y, T z) {
  const T tol = T(0.8) * std::pow(std::numeric_limits<T>::epsilon(), T(1) / 6);
  T ave, dx, dy, dz;
  for (;;) {
    T sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    T lam = sx * (sy + sz) + sy * sz;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    ave = (x + y + z) / 3;
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::fmax(std::fabs(dx), std::fmax(std::fabs(dy), std::fabs(dz))) < tol) break;
  }
  T e2 = dx * dy - dz * dz;
  T e3 = dx * dy * dz;
  return (1 + (e2 / 24 - T(0.1) - T(3) / 44 * e3) * e2 + e3 / 14) / std::sqrt(ave);
}

template <std::floating_point T>
T carlson_rd(T x, T y, T z) {
  const T tol = T(0.5) * std::pow(std::numeric_limits<T>::epsilon(), T(1) / 6);
  const T c1 = T(3) / 14, c2 = T(1) / 6, c3 = T(9) / 22, c4 = T(3) / 26;
  const T c5 = c3 / 4, c6 = T(1.5) * c4;
  T sum = 0, fac = 1, ave, dx, dy, dz;
  for (;;) {
    T sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    T lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac /= 4;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    ave = (x + y + 3 * z) / 5;
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::fmax(std::fabs(dx), std::fmax(std::fabs(dy), std::fabs(dz))) < tol) break;
  }
  T ea = dx * dy, eb = dz * dz, ec = ea - eb, ed = ea - 6 * eb, ee = ed + ec + ec;
  return 3 * sum + fac *
                       (1 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                        dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (ave * std::sqrt(ave));
}

// Splits phi = r + m*pi with r in [-pi/2, pi/2].
template <std::floating_point T>
T reduce_half_turns(T phi, T& m) {
  m = std::nearbyint(phi / std::numbers::pi_v<T>);
  return phi - m * std::numbers::pi_v<T>;
}

}  // namespace detail

template <std::floating_point T>
T ellint_K(T e) {
  auto k = modulus(e);
  T a = 1, b = k.ep;
  while (std::fabs(a - b) > 2 * std::numeric_limits<T>::epsilon() * a) {
    T an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi_v<T> / (a + b);
}

template <std::floating_point T>
T ellint_E(T e) {
  auto k = modulus(e);
  T y = k.ep * k.ep;
  return detail::carlson_rf(T(0), y, T(1)) - e * e / 3 * detail::carlson_rd(T(0), y, T(1));
}

// Incomplete integral of the first kind, extended quasi-periodically to all real phi.
template <std::floating_point T>
T ellint_F(T phi, T e) {
  modulus(e);
  T m;
  T r = detail::reduce_half_turns(phi, m);
  T s = std::sin(r), c = std::cos(r);
  T f = s * detail::carlson_rf(c * c, T(1) - e * e * s * s, T(1));
  return m == 0 ? f : f + 2 * m * ellint_K(e);
}

// Incomplete integral of the second kind, same extension.
template <std::floating_point T>
T ellint_E(T phi, T e) {
  modulus(e);
  T m;
  T r = detail::reduce_half_turns(phi, m);
  T s = std::sin(r), c = std::cos(r);
  T x = c * c, y = T(1) - e * e * s * s;
  T v = s * detail::carlson_rf(x, y, T(1)) - e * e * s * s * s / 3 * detail::carlson_rd(x, y, T(1));
  return m == 0 ? v : v + 2 * m * ellint_E(e);
}

template <std::floating_point T>
JacobiValues<T> jacobi(T u, T e) {
  auto k = modulus(e);
  T am;
  if (e == 0) {
    am = u;
  } else {
    // am(u + 2K) = am(u) + pi keeps the recursion on a bounded argument.
    T K = ellint_K(e);
    T m = std::nearbyint(u / (2 * K));
    T u0 = u - 2 * K * m;

    std::vector<T> ratio;
    T a = 1, b = k.ep, c = e;
    while (std::fabs(c) > std::numeric_limits<T>::epsilon() * a && ratio.size() < 64) {
      T an = (a + b) / 2;
      c = (a - b) / 2;
      b = std::sqrt(a * b);
      a = an;
      ratio.push_back(c / a);
    }
    T phi = std::ldexp(a * u0, static_cast<int>(ratio.size()));
    for (auto it = ratio.rbegin(); it != ratio.rend(); ++it) phi = (phi + std::asin(*it * std::sin(phi))) / 2;
    am = phi + m * std::numbers::pi_v<T>;
  }
  JacobiValues<T> v{};
  v.u = u;
  v.am = am;
  v.sn = std::sin(am);
  v.cn = std::cos(am);
  v.dn = std::sqrt(k.ep * k.ep + e * e * v.cn * v.cn);
  v.cd = v.cn / v.dn;
  return v;
}

// Jacobi epsilon: integral of dn^2 from 0 to u.
template <std::floating_point T>
T jacobi_epsilon(T u, T e) {
  return ellint_E(jacobi(u, e).am, e);
}

template <std::floating_point T>
T gauss_modulus(T e) {
  return 2 * std::sqrt(e) / (1 + e);
}

template <std::floating_point T>
T dK_de(T e) {
  auto k = modulus(e);
  if (e == 0) return T(0);
  T ep2 = k.ep * k.ep;
  return (ellint_E(e) - ep2 * ellint_K(e)) / (e * ep2);
}

template <std::floating_point T>
T dcd_dt(T t, T e) {
  auto v = jacobi(t, e);
  return -(T(1) - e * e) * v.sn / (v.dn * v.dn);
}

// Derivative of cd(t, e) in the modulus at fixed argument.
template <std::floating_point T>
T dcd_de(T t, T e) {
  if (e == 0) return T(0);
  auto v = jacobi(t, e);
  return v.sn / (e * v.dn * v.dn) * (jacobi_epsilon(t, e) - (T(1) - e * e) * t);
}

}  // namespace poncelet
