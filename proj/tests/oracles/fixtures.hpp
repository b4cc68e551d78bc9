#pragma once

#include <random>

#include "poncelet/mat3.hpp"
#include "poncelet/pencil.hpp"

namespace fixtures {

using namespace poncelet;

// Random homography that keeps the closed unit disk away from the line at infinity.
inline Mat3 random_homography(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  Mat3 M{};
  do {
    M = {{{1 + 0.8 * U(rng), 0.8 * U(rng), 2 * U(rng)},
          {0.8 * U(rng), 1 + 0.8 * U(rng), 2 * U(rng)},
          {0.4 * U(rng), 0.4 * U(rng), 1.0}}};
  } while (std::fabs(det(M)) < 0.2);
  return M;
}

inline Spectrum random_spectrum(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  double l3 = 0.05 + 2 * U(rng);
  double l2 = l3 * (1.05 + 3 * U(rng));
  double l1 = l2 * (1.05 + 3 * U(rng));
  return {l1, l2, l3};
}

// Pencil whose standard chart is the image of the unit disk under a random homography.
struct RandomPencil {
  SymmetricConic C1, C2;
  Spectrum lambda;
  Mat3 M;
};

inline RandomPencil random_pencil(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.2, 5);
  Spectrum s = random_spectrum(rng);
  Mat3 M = random_homography(rng);
  Mat3 Mi = inverse(M);
  double a = U(rng), b = U(rng);
  auto C1 = SymmetricConic::from_matrix(a * (transpose(Mi) * diag3(1, 1, -1) * Mi));
  auto C2 = SymmetricConic::from_matrix(b * (transpose(Mi) * diag3(s.l1, s.l2, -s.l3) * Mi));
  return {C1, C2, {s.l1 * b / a, s.l2 * b / a, s.l3 * b / a}, M};
}

}  // namespace fixtures
