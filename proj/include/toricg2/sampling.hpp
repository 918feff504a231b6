#pragma once

// Seeded random points for the verification suites.

#include <cmath>
#include <random>

#include "toricg2/ansatz.hpp"
#include "toricg2/models.hpp"

namespace toricg2 {

using Rng = std::mt19937_64;

inline cplx random_complex(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline Eigen::Quaterniond random_unit_quaternion(Rng& rng) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q;
}

// r^3 uniform in (4 eps + 0.2, 4 eps + 3.2)
inline QuatPair random_bs_point(Rng& rng, double eps) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QuatPair pt;
  pt.p = random_unit_quaternion(rng);
  pt.q = random_unit_quaternion(rng);
  pt.eps = eps;
  pt.r = std::cbrt(4.0 * eps + 0.2 + 3.0 * u(rng));
  return pt;
}

inline QuatDirection random_direction(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), Eigen::Vector3d(n(rng), n(rng), n(rng)), Eigen::Vector3d(n(rng), n(rng), n(rng))};
}

inline Vec4 random_in_box(Rng& rng, const Box& b) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec4 x;
  for (int k = 0; k < 4; ++k) x(k) = b.lo(k) + u(rng) * (b.hi(k) - b.lo(k));
  return x;
}

// Gaussian direction with a log-uniform scale in [1e-3, 1e3].
inline Vec4 random_multiscale(Rng& rng) {
  std::normal_distribution<double> n;
  std::uniform_int_distribution<int> e(-3, 3);
  return std::pow(10.0, e(rng)) * Vec4(n(rng), n(rng), n(rng), n(rng));
}

}  // namespace toricg2
