#pragma once

// Self-check suites run by `poncelet verify`.

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "poncelet/billiard.hpp"
#include "poncelet/cayley.hpp"
#include "poncelet/elliptic.hpp"
#include "poncelet/pencil.hpp"
#include "poncelet/poncelet.hpp"

namespace poncelet::verify {

struct Check {
  std::string name;
  double value;
  double bound;
  bool below;  // pass when value < bound, otherwise when value > bound
  bool pass() const { return std::isfinite(value) && (below ? value < bound : value > bound); }
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"elliptic", "confocal", "pencil", "cayley", "composition"};
  return names;
}

inline Spectrum sixth_spectrum() { return {1.0 / 5, 1.0 / 8, 1.0 / 9}; }

// Real root of 21 x^3 + 14 x^2 + 7 x - 8 by Newton's method.
inline double cubic_field_root() {
  double x = 0.45;
  for (int i = 0; i < 50; ++i) x -= (((21 * x + 14) * x + 7) * x - 8) / ((63 * x + 28) * x + 7);
  return x;
}

// Pencil with outer C1 and inner C_nu of the given pencil.
inline Pencil subpencil(const Pencil& P, PencilParam nu) { return Pencil(P.C1, member(P, nu)); }

inline SuiteReport elliptic_suite() {
  SuiteReport r{"elliptic", {}};
  double ident = 0, trip = 0, landen = 0, dcd = 0, dk = 0;
  for (int i = 1; i <= 19; ++i) {
    double e = 0.05 * i, K = ellint_K(e);
    for (int j = -64; j <= 64; ++j) {
      auto v = jacobi(8 * K * j / 64.0, e);
      ident = std::fmax(ident, std::fabs(v.sn * v.sn + v.cn * v.cn - 1));
      ident = std::fmax(ident, std::fabs(v.dn * v.dn + e * e * v.sn * v.sn - 1));
    }
    for (int j = 1; j < 32; ++j) {
      double u = K * j / 32.0;
      trip = std::fmax(trip, std::fabs(ellint_F(jacobi(u, e).am, e) - u));
    }
    landen = std::fmax(landen, std::fabs(ellint_K(gauss_modulus(e)) - (1 + e) * K) / ((1 + e) * K));
    double h = 1e-5;
    double fd = (ellint_K(e + h) - ellint_K(e - h)) / (2 * h);
    dk = std::fmax(dk, std::fabs(fd - dK_de(e)) / std::fabs(dK_de(e)));
    double t = 0.7 * K;
    double fdt = (jacobi(t + h, e).cd - jacobi(t - h, e).cd) / (2 * h);
    dcd = std::fmax(dcd, std::fabs(fdt - dcd_dt(t, e)) / std::fabs(dcd_dt(t, e)));
  }
  r.checks.push_back({"jacobi identities", ident, 1e-11, true});
  r.checks.push_back({"F(am(u)) round trip", trip, 1e-10, true});
  r.checks.push_back({"Gauss-Landen K relation", landen, 1e-11, true});
  r.checks.push_back({"dK/de vs finite difference", dk, 1e-6, true});
  r.checks.push_back({"dcd/dt vs finite difference", dcd, 1e-6, true});
  return r;
}

inline SuiteReport confocal_suite() {
  SuiteReport r{"confocal", {}};
  r.checks.push_back({"rho(0.8, 0.572851) - 2/7", std::fabs(rotation_confocal({0.8, 0.572851}) - 2.0 / 7), 5e-6, true});
  r.checks.push_back({"rho(0.6, 0.503246) - 1/5", std::fabs(rotation_confocal({0.6, 0.503246}) - 0.2), 5e-6, true});
  auto [f1, f2] = half_rotation({0.8, 0.572851});
  r.checks.push_back({"half rotation f2", std::fabs(f2 - 0.419316), 5e-6, true});
  r.checks.push_back({"half rotation rho", std::fabs(rotation_confocal({0.8, f2}) - 5.0 / 14), 5e-6, true});
  auto g = gauss_transform({0.6, 0.503246});
  r.checks.push_back({"Gauss transform", std::fmax(std::fabs(g.e - 0.968246), std::fabs(g.f - 0.913706)), 5e-6, true});

  double ginv = 0;
  EccPair p{0.6, 0.503246};
  double rho0 = rotation_confocal(p);
  for (int i = 0; i < 3; ++i) {
    p = gauss_transform(p);
    ginv = std::fmax(ginv, std::fabs(rotation_confocal(p) - rho0));
  }
  r.checks.push_back({"Gauss invariance of rho", ginv, 1e-9, true});

  const std::pair<double, PoristicSet> sets[] = {{1.0 / 3, PoristicSet::third}, {0.25, PoristicSet::quarter},
                                                 {0.2, PoristicSet::fifth},     {0.4, PoristicSet::two_fifths},
                                                 {1.0 / 6, PoristicSet::sixth}};
  double poly = 0;
  for (auto [ell, set] : sets)
    for (int i = 1; i <= 19; ++i) {
      double e = 0.05 * i;
      poly = std::fmax(poly, std::fabs(confocal_poristic_residual(e, porism_f(e, ell), set)));
    }
  r.checks.push_back({"poristic polynomials on porism_f", poly, 1e-9, true});

  double conj = 0;
  EccPair q{0.8, 0.5};
  double rq = rotation_confocal(q);
  for (int i = 0; i < 32; ++i) {
    double th = (i + 0.5) / 32;
    conj = std::fmax(conj, distance(confocal_poncelet_map(q, confocal_cover(th, q)), confocal_cover(th + rq, q)));
  }
  r.checks.push_back({"billiard covering conjugacy", conj, 1e-9, true});
  return r;
}

inline SuiteReport pencil_suite() {
  SuiteReport r{"pencil", {}};
  Pencil P = diagonal_pencil(sixth_spectrum());
  r.checks.push_back({"reference pencil eccentricity", std::fabs(P.e - std::sqrt(27.0 / 32)), 1e-12, true});
  r.checks.push_back({"reference pencil f(0,1)", std::fabs(f_of_nu(P, {0, 1}) - std::sqrt(3.0) / 2), 1e-12, true});

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  double duality = 0;
  int mono_fail = 0;
  const auto& s = P.lambda;
  auto random_nu = [&] { return PencilParam{-s.l3 + (s.l1 + s.l3) * U(rng), 1.0}; };
  for (int i = 0; i < 100; ++i) {
    PencilParam nu = random_nu();
    if (P.classify(nu) != ParamKind::Interior) continue;
    duality = std::fmax(duality, std::fabs(rho_of_nu(P, nu) + rho_of_nu(P, dual(P, nu)) - 0.5));
    PencilParam mu = random_nu();
    if (P.classify(mu) != ParamKind::Interior) continue;
    double c = nesting_order(nu, mu), d = rho_of_nu(P, mu) - rho_of_nu(P, nu);
    if (std::fabs(c) > 1e-12 && (c > 0) != (d > 0)) ++mono_fail;
  }
  r.checks.push_back({"duality rho + rho(dual) = 1/2", duality, 1e-10, true});
  r.checks.push_back({"monotonicity sign violations", static_cast<double>(mono_fail), 0.5, true});

  double conj = 0;
  PencilParam nu{0, 1};
  double rho = rho_of_nu(P, nu);
  for (int i = 0; i < 32; ++i) {
    double th = (i + 0.25) / 32;
    PlanePoint z = covering(P, th);
    PlanePoint a = poncelet_step(P, nu, z);
    conj = std::fmax(conj, distance(a, covering(P, th + rho)));
    conj = std::fmax(conj, distance(a, conjugate_step(P, nu, z)));
  }
  r.checks.push_back({"geometric step vs covering conjugacy", conj, 1e-8, true});
  return r;
}

inline SuiteReport cayley_suite() {
  SuiteReport r{"cayley", {}};
  Pencil base = diagonal_pencil(sixth_spectrum());
  double worst_on = 0, worst_off = INFINITY;
  for (int N = 3; N <= 10; ++N)
    for (int k = 1; 2 * k < N; ++k) {
      if (std::gcd(k, N) != 1) continue;
      double ell = static_cast<double>(k) / N;
      worst_on = std::fmax(worst_on, cayley_condition(subpencil(base, invert_rho(base, ell)), N));
      for (double off : {ell - 0.01, ell + 0.01})
        if (off > 0 && off < 0.5)
          worst_off = std::fmin(worst_off, cayley_condition(subpencil(base, invert_rho(base, off)), N));
    }
  r.checks.push_back({"Cayley residual on porisms", worst_on, 1e-8, true});
  r.checks.push_back({"Cayley residual off porisms", worst_off, 1e-4, false});
  return r;
}

inline SuiteReport composition_suite() {
  SuiteReport r{"composition", {}};
  Pencil P = diagonal_pencil(sixth_spectrum());
  PencilParam n1 = invert_rho(P, 0.2), n2 = invert_rho(P, 0.3);
  std::vector<ScheduleEntry> five{{n1, 1}, {n2, -1}, {n1, 1}, {n1, 1}, {n2, -1}};
  double res5 = 0;
  for (int i = 0; i < 8; ++i) res5 = std::fmax(res5, run_composition(P, five, covering(P, i / 8.0 + 0.01)).closure_residual);
  r.checks.push_back({"five-step schedule closure", res5, 1e-7, true});

  double x = cubic_field_root();
  PencilParam c1 = invert_rho(P, 3 * x * x * x), c2 = invert_rho(P, 2 * x * x), c3 = invert_rho(P, x);
  std::vector<ScheduleEntry> cubic;
  for (int i = 0; i < 7; ++i) {
    cubic.push_back({c1, 1});
    cubic.push_back({c2, 1});
    cubic.push_back({c3, 1});
  }
  double res21 = 0;
  for (int i = 0; i < 8; ++i)
    res21 = std::fmax(res21, run_composition(P, cubic, covering(P, i / 8.0 + 0.03)).closure_residual);
  r.checks.push_back({"cubic-field schedule z21 = z0", res21, 1e-6, true});
  return r;
}

inline SuiteReport run_suite(const std::string& name) {
  if (name == "elliptic") return elliptic_suite();
  if (name == "confocal") return confocal_suite();
  if (name == "pencil") return pencil_suite();
  if (name == "cayley") return cayley_suite();
  if (name == "composition") return composition_suite();
  fail(ErrorKind::InvalidParameter, "unknown suite '" + name + "'");
}

}  // namespace poncelet::verify
