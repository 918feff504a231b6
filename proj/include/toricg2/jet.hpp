#pragma once

// Forward-mode jets in the four coordinates (nu1, nu2, nu3, mu).

#include <Eigen/Dense>
#include <unsupported/Eigen/AutoDiff>

#include <array>

namespace toricg2 {

using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

using Jet1 = Eigen::AutoDiffScalar<Eigen::Vector4d>;
using Jet2 = Eigen::AutoDiffScalar<Eigen::Matrix<Jet1, 4, 1>>;

inline Jet1 make_jet1(double v, const Vec4& grad) { return Jet1(v, grad); }

inline Jet2 make_jet2(double v, const Vec4& grad, const Mat4& hess) {
  Eigen::Matrix<Jet1, 4, 1> d;
  for (int a = 0; a < 4; ++a) d(a) = Jet1(grad(a), hess.row(a).transpose());
  return Jet2(Jet1(v, grad), d);
}

inline std::array<Jet1, 4> jet1_variables(const Vec4& x) {
  std::array<Jet1, 4> out;
  for (int a = 0; a < 4; ++a) out[static_cast<std::size_t>(a)] = Jet1(x(a), Vec4::Unit(a));
  return out;
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet1& x) { return x.value(); }
inline double value_of(const Jet2& x) { return x.value().value(); }

}  // namespace toricg2
