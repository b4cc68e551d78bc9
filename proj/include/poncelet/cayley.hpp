#pragma once

// Algebraic porism tests: Cayley determinants, eigenvalue relations, classical polynomials.

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/error.hpp"
#include "poncelet/pencil.hpp"

namespace poncelet {

// Coefficients of det(lambda*C1 - C2) = b0 l^3 + b1 l^2 + b2 l + b3.
inline std::array<double, 4> beta_coefficients(const Pencil& P) {
  auto k = characteristic_cubic(P.C1.matrix(), P.C2.matrix());
  return {k[3], k[2], k[1], k[0]};
}

// Taylor coefficients of sqrt(b3 + b2 l + b1 l^2 + b0 l^3) at l = 0.
inline std::vector<double> sqrt_series(const std::array<double, 4>& beta, int order) {
  if (order < 2) fail(ErrorKind::InvalidParameter, "series order must be at least 2");
  if (!(beta[3] > 0)) fail(ErrorKind::BadSignature, "det(-C2) must be positive");
  std::vector<double> p(order + 1, 0.0);
  for (int i = 0; i <= std::min(order, 3); ++i) p[i] = beta[3 - i];
  std::vector<double> a(order + 1, 0.0);
  a[0] = std::sqrt(beta[3]);
  for (int k = 1; k <= order; ++k) {
    // Neumaier-compensated convolution sum.
    double sum = 0, comp = 0;
    for (int i = 1; i < k; ++i) {
      double t = a[i] * a[k - i], s = sum + t;
      comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
      sum = s;
    }
    a[k] = (p[k] - (sum + comp)) / (2 * a[0]);
  }
  return a;
}

inline std::vector<double> sqrt_series(const Pencil& P, int order) { return sqrt_series(beta_coefficients(P), order); }

// Hankel matrix of the period-N Cayley condition, row-major.
inline std::vector<std::vector<double>> cayley_matrix(const std::vector<double>& alpha, int N) {
  if (N < 3) fail(ErrorKind::InvalidPeriod, "period must be at least 3");
  int m = N % 2 ? (N - 1) / 2 : N / 2 - 1;
  int offset = N % 2 ? 2 : 3;
  if (static_cast<int>(alpha.size()) < offset + 2 * m - 1) fail(ErrorKind::InvalidParameter, "series too short");
  std::vector<std::vector<double>> H(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) H[i][j] = alpha[offset + i + j];
  return H;
}

namespace detail {

// Determinants of the leading n x n and (n-1) x (n-1) blocks via partial pivoting.
inline double lu_det(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  double d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (a[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

inline std::vector<std::vector<double>> leading_block(const std::vector<std::vector<double>>& a, int n) {
  std::vector<std::vector<double>> b(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = a[i][j];
  return b;
}

}  // namespace detail

inline int series_order_for(int N) { return N + 1; }

// Raw Cayley determinant of the pencil for period N.
inline double cayley_determinant(const Pencil& P, int N) {
  if (N < 3) fail(ErrorKind::InvalidPeriod, "period must be at least 3");
  return detail::lu_det(cayley_matrix(sqrt_series(P, series_order_for(N)), N));
}

// Scale-free Cayley residual from the spectrum and the beta coefficients.
//
// The series is taken in the variable lambda/l3 and divided by alpha0, which removes
// the scaling of C1, C2 and congruences. Hankel determinants of such a series decay
// like 4^-(m(m-1)), so the matrix is balanced as D H D with D = diag(4^i), and the
// residual is the trailing pivot det(H_m) / det(H_{m-1}).
inline double cayley_residual(const std::array<double, 4>& beta, double l3, int N) {
  if (N < 3) fail(ErrorKind::InvalidPeriod, "period must be at least 3");
  auto alpha = sqrt_series(beta, series_order_for(N));
  double a0 = alpha[0], scale = 1;
  for (auto& a : alpha) {
    a *= scale / a0;
    scale *= l3;
  }
  auto H = cayley_matrix(alpha, N);
  const int m = static_cast<int>(H.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) H[i][j] *= std::ldexp(1.0, 2 * (i + j));
  double dm = detail::lu_det(H);
  double dm1 = m > 1 ? detail::lu_det(detail::leading_block(H, m - 1)) : 1.0;
  return std::fabs(dm / dm1);
}

inline double cayley_condition(const Pencil& P, int N) { return cayley_residual(beta_coefficients(P), P.lambda.l3, N); }

// Cayley residual of the diagonal pencil with spectrum s.
inline double cayley_condition(const Spectrum& s, int N) {
  require_spectrum(s);
  double e1 = s.l1 + s.l2 + s.l3, e2 = s.l1 * s.l2 + s.l1 * s.l3 + s.l2 * s.l3, e3 = s.l1 * s.l2 * s.l3;
  return cayley_residual({-1.0, e1, -e2, e3}, s.l3, N);
}

enum class LambdaPorism { quarter, third, sixth };

inline double lambda_porism(const Spectrum& s, LambdaPorism which) {
  require_spectrum(s);
  switch (which) {
    case LambdaPorism::quarter: return s.l1 * s.l2 - s.l1 * s.l3 - s.l2 * s.l3;
    case LambdaPorism::third: return 1 / std::sqrt(s.l3) - 1 / std::sqrt(s.l1) - 1 / std::sqrt(s.l2);
    case LambdaPorism::sixth: return std::sqrt(1 - s.l3 / s.l1) + std::sqrt(1 - s.l3 / s.l2) - 1;
  }
  fail(ErrorKind::UnknownSet);
}

enum class Bicentric { triangle, quadrilateral };

inline void require_circles_nested(double R, double r, double a) {
  if (!(r > 0) || !(R > r + std::fabs(a))) fail(ErrorKind::NotNested, "need R > r + |a|");
}

inline double bicentric_check(double R, double r, double a, Bicentric kind) {
  require_circles_nested(R, r, a);
  if (kind == Bicentric::triangle) return 1 / (R - a) + 1 / (R + a) - 1 / r;
  return 1 / ((R - a) * (R - a)) + 1 / ((R + a) * (R + a)) - 1 / (r * r);
}

// Spectrum of the circle pair x^2+y^2=R^2 (outer) and (x-a)^2+y^2=r^2 (inner).
// For a = 0 the top two eigenvalues coincide.
inline Spectrum circle_spectrum(double R, double r, double a) {
  require_circles_nested(R, r, a);
  double b = R * R + r * r - a * a;
  double d = std::sqrt(b * b - 4 * r * r * R * R);
  double l2 = std::fmin((b + d) / (2 * R * R), 1.0);
  return {1.0, l2, r * r / (R * R * l2)};
}

inline SymmetricConic outer_circle(double R) { return SymmetricConic::diag(1, 1, -R * R); }

inline SymmetricConic inner_circle(double r, double a) { return {1, 0, -a, 1, 0, a * a - r * r}; }

enum class PoristicSet { third, quarter, fifth, two_fifths, sixth };

inline PoristicSet parse_poristic_set(std::string_view s) {
  if (s == "1/3") return PoristicSet::third;
  if (s == "1/4") return PoristicSet::quarter;
  if (s == "1/5") return PoristicSet::fifth;
  if (s == "2/5") return PoristicSet::two_fifths;
  if (s == "1/6") return PoristicSet::sixth;
  fail(ErrorKind::UnknownSet, std::string(s));
}

// Polynomial in (e, f) given as monomials c * e^i * f^j.
struct Monomial {
  double c;
  int i, j;
};

inline const std::vector<Monomial>& poristic_polynomial(PoristicSet set) {
  static const std::vector<Monomial> third{{1, 2, 0}, {2, 1, 3}, {-2, 1, 1}, {-1, 0, 4}};
  static const std::vector<Monomial> quarter{{1, 2, 0}, {1, 0, 4}, {-2, 0, 2}};
  static const std::vector<Monomial> sixth{{4, 4, 2}, {-3, 4, 0}, {-6, 2, 4}, {4, 2, 2}, {1, 0, 8}};
  static const std::vector<Monomial> fifth{
      {1, 6, 0},    {8, 5, 5},   {-10, 5, 3}, {2, 5, 1},  {-4, 4, 6},  {5, 4, 4},   {-4, 4, 2},
      {-12, 3, 7},  {12, 3, 5},  {4, 2, 10},  {-5, 2, 8}, {4, 2, 6},   {-2, 1, 11}, {10, 1, 9},
      {-8, 1, 7},   {-1, 0, 12}};
  static const std::vector<Monomial> two_fifths = [] {
    auto p = fifth;
    for (auto& m : p)
      if (m.i % 2) m.c = -m.c;
    return p;
  }();
  switch (set) {
    case PoristicSet::third: return third;
    case PoristicSet::quarter: return quarter;
    case PoristicSet::fifth: return fifth;
    case PoristicSet::two_fifths: return two_fifths;
    case PoristicSet::sixth: return sixth;
  }
  fail(ErrorKind::UnknownSet);
}

// Polynomial value divided by the sum of the absolute monomial values.
inline double confocal_poristic_residual(double e, double f, PoristicSet set) {
  if (!(0 < f && f < e && e < 1)) fail(ErrorKind::NotInDelta, "need 0 < f < e < 1");
  double sum = 0, mag = 0;
  for (const auto& m : poristic_polynomial(set)) {
    double t = m.c * std::pow(e, m.i) * std::pow(f, m.j);
    sum += t;
    mag += std::fabs(t);
  }
  return sum / mag;
}

}  // namespace poncelet
