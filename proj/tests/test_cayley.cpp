#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles/fixtures.hpp"
#include "oracles/rational.hpp"
#include "poncelet/billiard.hpp"
#include "poncelet/cayley.hpp"
#include "poncelet/poncelet.hpp"

using namespace poncelet;
using oracle::q;
using oracle::Rational;

namespace {

const Spectrum sixth_pencil{1.0 / 5, 1.0 / 8, 1.0 / 9};

template <class Fn>
ErrorKind error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::UnknownSet;
}

// Beta coefficients of a diagonal pencil, det C1 = -1.
std::array<double, 4> diagonal_beta(const Spectrum& s) {
  return {-1.0, s.l1 + s.l2 + s.l3, -(s.l1 * s.l2 + s.l1 * s.l3 + s.l2 * s.l3), s.l1 * s.l2 * s.l3};
}

// sqrt(l1 l2 l3) * prod sqrt(1 - x / li) as a product of three binomial series.
std::vector<double> product_series(const Spectrum& s, int order) {
  std::vector<double> out(order + 1, 0.0);
  out[0] = std::sqrt(s.l1 * s.l2 * s.l3);
  for (double l : {s.l1, s.l2, s.l3}) {
    std::vector<double> b(order + 1);
    b[0] = 1;
    for (int k = 1; k <= order; ++k) b[k] = b[k - 1] * (k - 1.5) / k / l;  // (1 - x/l)^(1/2)
    std::vector<double> next(order + 1, 0.0);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) next[i + j] += out[i] * b[j];
    out = next;
  }
  return out;
}

Pencil subpencil(const Pencil& P, PencilParam nu) { return Pencil(P.C1, member(P, nu)); }

}  // namespace

TEST(SqrtSeries, DiagonalFixture) {
  Pencil P = diagonal_pencil(sixth_pencil);
  auto beta = beta_coefficients(P);
  auto expect = diagonal_beta(sixth_pencil);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(beta[i], expect[i], 1e-16);
  auto a = sqrt_series(P, 12);
  EXPECT_NEAR(a[0], std::sqrt(1.0 / 360), 1e-16);
  auto oracle = product_series(sixth_pencil, 12);
  // Late coefficients cancel heavily; compare on their natural scale alpha0 / l3^k.
  for (int k = 0; k <= 12; ++k) EXPECT_NEAR(a[k], oracle[k], 1e-12 * a[0] / std::pow(sixth_pencil.l3, k)) << k;
  EXPECT_NEAR(a[6], -0.9486832980505138, 1e-10);
  EXPECT_NEAR(a[12], -8610204.0763081568, 1e-12 * a[0] / std::pow(sixth_pencil.l3, 12));
}

TEST(SqrtSeries, SquaresBackToTheCubic) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 50; ++n) {
    auto rp = fixtures::random_pencil(rng);
    Pencil P = build_pencil(rp.C1, rp.C2);
    auto beta = beta_coefficients(P);
    const int order = 10;
    auto a = sqrt_series(P, order);
    double scale = std::fabs(beta[0]) + std::fabs(beta[1]) + std::fabs(beta[2]) + std::fabs(beta[3]);
    for (int k = 0; k <= order; ++k) {
      double sq = 0;
      for (int i = 0; i <= k; ++i) sq += a[i] * a[k - i];
      double want = k <= 3 ? beta[3 - k] : 0.0;
      // Coefficients grow like l3^-k; compare in the rescaled variable.
      double w = std::pow(P.lambda.l3, k);
      EXPECT_NEAR(sq * w, want * w, 1e-10 * scale) << k;
    }
  }
}

TEST(SqrtSeries, Errors) {
  Pencil P = diagonal_pencil(sixth_pencil);
  EXPECT_EQ(error_of([&] { sqrt_series(P, 1); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(error_of([] { sqrt_series({-1.0, 1.0, 1.0, -0.5}, 4); }), ErrorKind::BadSignature);
  EXPECT_EQ(error_of([&] { cayley_condition(P, 2); }), ErrorKind::InvalidPeriod);
}

TEST(CayleyThree, ExactRationalFixture) {
  // 1/sqrt(l3) = 1/sqrt(l1) + 1/sqrt(l2) with l1 = 1/4, l2 = 1/9, l3 = 1/25.
  Rational l1 = q(1, 4), l2 = q(1, 9), l3 = q(1, 25);
  Rational b1 = l1 + l2 + l3, b2 = Rational(0) - (l1 * l2 + l1 * l3 + l2 * l3), b3 = l1 * l2 * l3;
  EXPECT_TRUE(b2 * b2 == Rational(4) * b1 * b3);
  Spectrum s{0.25, 1.0 / 9, 0.04};
  EXPECT_NEAR(lambda_porism(s, LambdaPorism::third), 0.0, 1e-14);
  EXPECT_LT(cayley_condition(s, 3), 1e-12);
  EXPECT_NEAR(rho_of_nu(s, {0, 1}), 1.0 / 3, 1e-12);
}

TEST(CayleyThree, EquivalentConditionsOnRandomSpectra) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> U(0, 1);
  for (int n = 0; n < 50; ++n) {
    Spectrum s = fixtures::random_spectrum(rng);
    if (n % 2 == 0) {
      // Force the third-porism relation by solving for l3.
      double r = 1 / std::sqrt(s.l1) + 1 / std::sqrt(s.l2);
      s.l3 = 1 / (r * r);
    }
    auto b = diagonal_beta(s);
    double lhs = b[2] * b[2], rhs = 4 * b[1] * b[3];
    bool quad = std::fabs(lhs - rhs) < 1e-9 * (lhs + std::fabs(rhs));
    bool third = std::fabs(lambda_porism(s, LambdaPorism::third)) < 1e-9 / std::sqrt(s.l3);
    bool cay = cayley_condition(s, 3) < 1e-9;
    bool rho = std::fabs(rho_of_nu(s, {0, 1}) - 1.0 / 3) < 1e-9;
    EXPECT_EQ(quad, n % 2 == 0);
    EXPECT_EQ(third, quad);
    EXPECT_EQ(cay, quad);
    EXPECT_EQ(rho, quad);
  }
}

TEST(CayleyCondition, PoristicAndOffPorismMembers) {
  for (Spectrum base : {sixth_pencil, Spectrum{1.0, 0.5, 0.2}}) {
    Pencil P = diagonal_pencil(base);
    for (int N = 3; N <= 10; ++N)
      for (int k = 1; 2 * k < N; ++k) {
        if (std::gcd(k, N) != 1) continue;
        double ell = double(k) / N;
        EXPECT_LT(cayley_condition(subpencil(P, invert_rho(P, ell)), N), 1e-8) << k << "/" << N;
        for (double off : {-0.01, 0.01}) {
          if (ell + off >= 0.5) continue;
          EXPECT_GT(cayley_condition(subpencil(P, invert_rho(P, ell + off)), N), 1e-4) << k << "/" << N << " " << off;
        }
      }
  }
}

TEST(CayleyCondition, InvariantUnderScalingAndCongruence) {
  std::mt19937_64 rng(27);
  for (int n = 0; n < 20; ++n) {
    auto rp = fixtures::random_pencil(rng);
    Pencil P = build_pencil(rp.C1, rp.C2);
    Pencil D = diagonal_pencil(P.lambda);
    for (int N : {3, 5, 8}) {
      double a = cayley_condition(P, N), b = cayley_condition(D, N), c = cayley_condition(P.lambda, N);
      EXPECT_NEAR(a, c, 1e-9 * (1 + c)) << N;
      EXPECT_NEAR(b, c, 1e-9 * (1 + c)) << N;
      Pencil S = build_pencil(rp.C1.scaled(3.0), rp.C2.scaled(0.25));
      EXPECT_NEAR(cayley_condition(S, N), a, 1e-9 * (1 + a)) << N;
    }
  }
}

TEST(CayleyCondition, SpecExamples) {
  Pencil P = diagonal_pencil(sixth_pencil);
  EXPECT_LT(cayley_condition(subpencil(P, invert_rho(P, 1.0 / 3)), 3), 1e-9);
  double e = 0.7, f = porism_f(e, 0.1);
  EXPECT_LT(cayley_condition(confocal_pencil(e, f), 10), 1e-8);
  // Golden-ratio rotation number is far from every k/N with N <= 10.
  auto generic = subpencil(P, invert_rho(P, (std::sqrt(5.0) - 1) / 4));
  for (int N = 3; N <= 10; ++N) EXPECT_GT(cayley_condition(generic, N), 1e-4) << N;
}

TEST(CayleyCondition, RawDeterminantVanishesOnPorism) {
  Pencil P = diagonal_pencil(sixth_pencil);
  Pencil Q = subpencil(P, invert_rho(P, 0.2));
  auto a = sqrt_series(Q, series_order_for(5));
  double scale = std::fabs(a[2] * a[4]) + a[3] * a[3];
  EXPECT_LT(std::fabs(cayley_determinant(Q, 5)), 1e-9 * scale);
  a = sqrt_series(Q, series_order_for(10));
  auto H = cayley_matrix(a, 10);
  ASSERT_EQ(H.size(), 4u);
  EXPECT_EQ(H[0][0], a[3]);
  EXPECT_EQ(H[3][3], a[9]);
  EXPECT_EQ(cayley_matrix(a, 3)[0][0], a[2]);
}

TEST(LambdaPorism, Values) {
  Rational l1 = q(1, 2), l2 = q(1, 3), l3 = q(1, 5);
  EXPECT_TRUE(l1 * l2 - l1 * l3 - l2 * l3 == Rational(0));
  Spectrum s{0.5, 1.0 / 3, 0.2};
  EXPECT_NEAR(lambda_porism(s, LambdaPorism::quarter), 0, 1e-16);
  EXPECT_NEAR(rho_of_nu(s, {0, 1}), 0.25, 1e-12);
  EXPECT_NEAR(lambda_porism(sixth_pencil, LambdaPorism::third), 3 - std::sqrt(5.0) - std::sqrt(8.0), 1e-13);
  EXPECT_NEAR(lambda_porism(sixth_pencil, LambdaPorism::third), -2.064, 5e-4);
  EXPECT_NEAR(lambda_porism(sixth_pencil, LambdaPorism::sixth), 0, 1e-15);
  EXPECT_NEAR(rho_of_nu(sixth_pencil, {0, 1}), 1.0 / 6, 1e-12);
  EXPECT_EQ(error_of([] { lambda_porism({1, 1, 0.5}, LambdaPorism::quarter); }), ErrorKind::DegenerateSpectrum);
}

TEST(LambdaPorism, SixthExactRational) {
  // sqrt(1 - l3/l1) = 3/5 and sqrt(1 - l3/l2) = 2/5.
  Spectrum s{525, 400, 336};
  EXPECT_NEAR(lambda_porism(s, LambdaPorism::sixth), 0, 1e-15);
  EXPECT_NEAR(rho_of_nu(s, {0, 1}), 1.0 / 6, 1e-12);
  EXPECT_LT(cayley_condition(s, 6), 1e-10);
}

TEST(LambdaPorism, ConfocalQuarterCondition) {
  for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{3.0, 2.5}, std::pair{1.3, 0.4}}) {
    double l0 = a * b / std::sqrt(a * a + b * b);
    double x = b * b / (b * b - l0 * l0), y = a * a / (a * a - l0 * l0);
    Spectrum s{std::max(x, y), std::min(x, y), 1.0};
    EXPECT_NEAR(lambda_porism(s, LambdaPorism::quarter) / (s.l1 * s.l2), 0, 1e-14);
    EXPECT_NEAR(rho_of_nu(s, {0, 1}), 0.25, 1e-12);
  }
}

TEST(Bicentric, ConcentricFixtures) {
  EXPECT_EQ(bicentric_check(1, 0.5, 0, Bicentric::triangle), 0.0);
  EXPECT_NEAR(bicentric_check(1, 1 / std::sqrt(2.0), 0, Bicentric::quadrilateral), 0.0, 1e-15);
  EXPECT_NEAR(rho_of_nu(circle_spectrum(1, 0.5, 0), {0, 1}), 1.0 / 3, 1e-10);
  EXPECT_NEAR(rho_of_nu(circle_spectrum(1, 1 / std::sqrt(2.0), 0), {0, 1}), 0.25, 1e-10);
  EXPECT_EQ(error_of([] { bicentric_check(1, 0.6, 0.5, Bicentric::triangle); }), ErrorKind::NotNested);
}

TEST(Bicentric, OffCenterCirclePair) {
  Spectrum s = circle_spectrum(1, 0.3, 0.2);
  EXPECT_NEAR(s.l2, 0.9558421984903521, 1e-14);
  EXPECT_NEAR(s.l3, 0.0941578015096479, 1e-14);
  EXPECT_GT(std::fabs(bicentric_check(1, 0.3, 0.2, Bicentric::triangle)), 0.1);
  EXPECT_GT(std::fabs(bicentric_check(1, 0.3, 0.2, Bicentric::quadrilateral)), 0.1);
  double rho = rho_of_nu(s, {0, 1});
  EXPECT_GT(std::fabs(rho - 1.0 / 3), 1e-3);
  EXPECT_GT(std::fabs(rho - 0.25), 1e-3);
  Pencil P = build_pencil(outer_circle(1), inner_circle(0.3, 0.2));
  EXPECT_NEAR(rho_of_nu(P, {0, 1}), rho, 1e-12);
}

TEST(Bicentric, AgreesWithLambdaConditions) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> U(0, 1);
  for (int n = 0; n < 50; ++n) {
    double R = 0.5 + 2 * U(rng), a = (0.02 + 0.3 * U(rng)) * R;
    auto kind = n % 2 ? Bicentric::triangle : Bicentric::quadrilateral;
    double r;
    if (n % 4 < 2) {
      r = kind == Bicentric::triangle ? 1 / (1 / (R - a) + 1 / (R + a))
                                      : 1 / std::sqrt(1 / ((R - a) * (R - a)) + 1 / ((R + a) * (R + a)));
    } else {
      r = (0.1 + 0.5 * U(rng)) * (R - a);
    }
    if (!(R > r + a)) continue;
    Spectrum s = circle_spectrum(R, r, a);
    double bic = bicentric_check(R, r, a, kind) * r;
    double lam = kind == Bicentric::triangle ? lambda_porism(s, LambdaPorism::third) * std::sqrt(s.l3)
                                             : lambda_porism(s, LambdaPorism::quarter) / (s.l1 * s.l2);
    bool bz = std::fabs(bic) < 1e-6, lz = std::fabs(lam) < 1e-6;
    EXPECT_EQ(bz, lz) << R << " " << r << " " << a;
    if (bz) {
      EXPECT_LT(std::fabs(bic), 1e-9);
      EXPECT_LT(std::fabs(lam), 1e-9);
      EXPECT_NEAR(rho_of_nu(s, {0, 1}), kind == Bicentric::triangle ? 1.0 / 3 : 0.25, 1e-10);
    }
  }
}

TEST(PoristicPolynomials, Values) {
  EXPECT_NEAR(confocal_poristic_residual(0.8, std::sqrt(0.4), PoristicSet::quarter), 0, 1e-15);
  EXPECT_NEAR(0.64 + 0.16 - 0.8, 0, 1e-15);
  EXPECT_LT(std::fabs(confocal_poristic_residual(0.6, porism_f(0.6, 0.2), PoristicSet::fifth)), 1e-9);
  EXPECT_GT(std::fabs(confocal_poristic_residual(0.8, 0.5, PoristicSet::third)), 1e-3);
  EXPECT_GT(std::fabs(rotation_confocal({0.8, 0.5}) - 1.0 / 3), 1e-3);
  EXPECT_EQ(error_of([] { confocal_poristic_residual(0.5, 0.6, PoristicSet::third); }), ErrorKind::NotInDelta);
  EXPECT_EQ(error_of([] { parse_poristic_set("1/7"); }), ErrorKind::UnknownSet);
  EXPECT_EQ(parse_poristic_set("2/5"), PoristicSet::two_fifths);
}

TEST(PoristicPolynomials, VanishExactlyOnTheirPorismAndAreGaussInvariant) {
  const std::pair<double, PoristicSet> sets[] = {{1.0 / 3, PoristicSet::third},
                                                 {0.25, PoristicSet::quarter},
                                                 {0.2, PoristicSet::fifth},
                                                 {0.4, PoristicSet::two_fifths},
                                                 {1.0 / 6, PoristicSet::sixth}};
  for (auto [ell, set] : sets)
    for (int i = 0; i < 20; ++i) {
      double e = 0.05 + 0.9 * i / 19.0, f = porism_f(e, ell);
      EXPECT_LT(std::fabs(confocal_poristic_residual(e, f, set)), 1e-9) << ell << " " << e;
      auto g = gauss_transform({e, f});
      EXPECT_LT(std::fabs(confocal_poristic_residual(g.e, g.f, set)), 1e-8) << ell << " " << e;
      // Off the porism the polynomial is visibly nonzero.
      double off = porism_f(e, ell + 0.02);
      EXPECT_GT(std::fabs(confocal_poristic_residual(e, off, set)), 1e-6) << ell << " " << e;
    }
}
