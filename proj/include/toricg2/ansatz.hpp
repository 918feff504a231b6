#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "toricg2/forms.hpp"
#include "toricg2/jet.hpp"
#include "toricg2/polynomial.hpp"

namespace toricg2 {

// Coordinates on U are (nu1, nu2, nu3, mu); on T^3 x U the coframe is
// (dt1, dt2, dt3, dnu1, dnu2, dnu3, dmu).
constexpr int kMu = 3;

struct Box {
  Vec4 lo = Vec4::Zero();
  Vec4 hi = Vec4::Ones();

  Vec4 center() const { return 0.5 * (lo + hi); }
  bool contains(const Vec4& x) const {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
  // res^4 points including the faces.
  std::vector<Vec4> grid(int res) const;
};

// Symmetric 3x3 matrix of polynomials in (nu1, nu2, nu3, mu).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  static PolyMatrix diagonal(const Poly4& a, const Poly4& b, const Poly4& c);
  static PolyMatrix constant(const Mat3& m);

  Poly4& operator()(int i, int j) { return e_[slot(i, j)]; }
  const Poly4& operator()(int i, int j) const { return e_[slot(i, j)]; }

  int degree() const;
  Mat3 eval(const Vec4& x) const;
  template <class S, class Vec>
  Eigen::Matrix<S, 3, 3> eval_as(const Vec& x) const {
    Eigen::Matrix<S, 3, 3> m;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        m(i, j) = (*this)(i, j).template eval<S>(x);
        if (j != i) m(j, i) = m(i, j);
      }
    return m;
  }
  PolyMatrix derivative(int var) const;
  bool is_diagonal() const;

  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b);
  friend PolyMatrix operator*(double s, PolyMatrix a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) { return a.e_ == b.e_; }

 private:
  static std::size_t slot(int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i == j ? i : 2 + i + j);  // 00 11 22 01 02 12
  }
  std::array<Poly4, 6> e_;
};

// Value, first and second partials of V at a point.
struct VJet {
  Mat3 value = Mat3::Zero();
  std::array<Mat3, 4> d1{};
  std::array<std::array<Mat3, 4>, 4> d2{};
};

class VField {
 public:
  enum class Kind { polynomial, callable };
  using Fn = std::function<Mat3(const Vec4&)>;

  static VField from_polynomial(PolyMatrix p, Box domain);
  static VField from_callable(Fn f, Box domain);

  Kind kind() const { return kind_; }
  const Box& domain() const { return domain_; }
  VField with_domain(const Box& b) const;
  const PolyMatrix& poly() const;

  Mat3 value(const Vec4& x) const;
  VJet jet(const Vec4& x) const;
  Eigen::Matrix<Jet1, 3, 3> jet1(const Vec4& x) const;
  Eigen::Matrix<Jet2, 3, 3> jet2(const Vec4& x) const;

 private:
  struct PolyData;
  Kind kind_ = Kind::polynomial;
  Box domain_;
  std::shared_ptr<const PolyData> poly_;
  Fn fn_;
};

// A_i = sum_b a[i][b] dx_b with x = (nu1, nu2, nu3, mu); theta_i = dt_i + A_i.
struct ConnectionPotential {
  std::array<std::array<Poly4, 4>, 3> a{};

  template <class S, class Vec>
  Eigen::Matrix<S, 3, 4> eval_as(const Vec& x) const {
    Eigen::Matrix<S, 3, 4> m;
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 4; ++b) m(i, b) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)].template eval<S>(x);
    return m;
  }
  Eigen::Matrix<double, 3, 4> eval(const Vec4& x) const { return eval_as<double>(x); }
  std::array<KForm<Poly4>, 3> d() const;
};

template <class S>
Eigen::Matrix<S, 3, 3> adj3(const Eigen::Matrix<S, 3, 3>& m) {
  Eigen::Matrix<S, 3, 3> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r(i, j) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
    }
  return r;
}

template <class S>
S det3(const Eigen::Matrix<S, 3, 3>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Z(l, i) = d adj(V)_{k i}/d nu_j - d adj(V)_{j i}/d nu_k, (l j k) cyclic, from a jet of V.
template <class AD>
auto z_matrix(const Eigen::Matrix<AD, 3, 3>& V) {
  using S = typename AD::DerType::Scalar;
  const Eigen::Matrix<AD, 3, 3> adj = adj3(V);
  Eigen::Matrix<S, 3, 3> Z;
  for (int l = 0; l < 3; ++l) {
    const int j = (l + 1) % 3, k = (l + 2) % 3;
    for (int i = 0; i < 3; ++i) Z(l, i) = adj(k, i).derivatives()(j) - adj(j, i).derivatives()(k);
  }
  return Z;
}

template <class S>
struct Structure {
  KForm<S> phi{7, 3};
  KForm<S> star_phi{7, 4};
  Eigen::Matrix<S, 7, 7> g;
};

// phi, *phi and g on the coordinate coframe, for V and the connection coefficients A (3x4).
template <class S>
Structure<S> structure_forms(const Eigen::Matrix<S, 3, 3>& V, const Eigen::Matrix<S, 3, 4>& A) {
  using F = KForm<S>;
  const Eigen::Matrix<S, 3, 3> adj = adj3(V);
  const S det = det3(V);
  const S one(1.0);
  std::array<F, 3> dnu, theta;
  for (int a = 0; a < 3; ++a) dnu[static_cast<std::size_t>(a)] = F::basis(7, {3 + a}, one);
  const F dmu = F::basis(7, {6}, one);
  for (int i = 0; i < 3; ++i) {
    F t = F::basis(7, {i}, one);
    for (int b = 0; b < 4; ++b) t += F::basis(7, {3 + b}, A(i, b));
    theta[static_cast<std::size_t>(i)] = t;
  }
  auto cyc = [](int i, int s) { return static_cast<std::size_t>((i + s) % 3); };

  Structure<S> out;
  out.phi = S(-det) * wedge(wedge(dnu[0], dnu[1]), dnu[2]);
  F s(7, 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += adj(a, b) * wedge(dnu[static_cast<std::size_t>(a)], theta[static_cast<std::size_t>(b)]);
  out.phi += wedge(dmu, s);
  for (int i = 0; i < 3; ++i) out.phi += wedge(wedge(theta[cyc(i, 0)], theta[cyc(i, 1)]), dnu[cyc(i, 2)]);

  out.star_phi = wedge(wedge(wedge(theta[0], theta[1]), theta[2]), dmu);
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 3; ++p)
      out.star_phi -= V(i, p) * wedge(wedge(dnu[cyc(i, 1)], dnu[cyc(i, 2)]), wedge(theta[cyc(p, 1)], theta[cyc(p, 2)]));
  F t(7, 3);
  for (int i = 0; i < 3; ++i) t += wedge(theta[cyc(i, 0)], wedge(dnu[cyc(i, 1)], dnu[cyc(i, 2)]));
  out.star_phi += det * wedge(dmu, t);

  Eigen::Matrix<S, 3, 7> Theta = Eigen::Matrix<S, 3, 7>::Zero();
  for (int i = 0; i < 3; ++i) {
    Theta(i, i) = one;
    for (int b = 0; b < 4; ++b) Theta(i, 3 + b) = A(i, b);
  }
  const Eigen::Matrix<S, 3, 3> w = adj / det;
  out.g = Theta.transpose() * w * Theta;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out.g(3 + a, 3 + b) += adj(a, b);
  out.g(6, 6) += det;
  return out;
}

// *phi written with the quadratic term (dnu^t adj(V) theta)^2 / (2 det V).
KForm<double> star_phi_quadratic(const Mat3& V, const Eigen::Matrix<double, 3, 4>& A);

Eigen::Matrix<double, 7, 7> ansatz_metric(const Mat3& V, const Eigen::Matrix<double, 3, 4>& A);

bool positive_definite(const Mat3& V);

// Smallest leading principal minor over the grid; positive iff V > 0 at every sample.
double min_leading_minor(const VField& V, const Box& box, int res);

Structure<double> build_structure(const VField& V, const ConnectionPotential& A, const Vec4& x);

Mat3 Z_of(const VField& V, const Vec4& x);
Mat3 Z_alt(const VField& V, const Vec4& x);
Mat3 W_of(const VField& V, const Vec4& x);

// omega_l = sum_i Z(l,i) dnu_i ^ dmu + sum_cyc W(l,i) dnu_j ^ dnu_k, as 2-forms on R^4.
std::array<KForm<double>, 3> omega_at(const VField& V, const Vec4& x);
std::array<KForm<double>, 3> d_omega_at(const VField& V, const Vec4& x);
std::array<KForm<Poly4>, 3> omega_poly(const PolyMatrix& V);

// Reads d(omega) as the elliptic residual: E(l,i) is the coefficient of dnu_j dnu_k dmu in
// d(omega_l), (ijk) cyclic; divergence(l) is the dnu_123 coefficient. For divergence-free V,
// E = L(V) + Q(dV).
struct DOmegaComponents {
  Mat3 E = Mat3::Zero();
  Eigen::Vector3d divergence = Eigen::Vector3d::Zero();
};
DOmegaComponents d_omega_components(const std::array<KForm<double>, 3>& domega);

Eigen::Vector3d div_residual(const VField& V, const Vec4& x);
Mat3 elliptic_residual(const VField& V, const Vec4& x);

struct TorsionResidual {
  double dphi = 0.0;
  double dstar_phi = 0.0;
  double potential_mismatch = 0.0;  // max |dA - omega|
};

// Max coefficient of d(phi), d(*phi) over the grid; throws if dA != omega.
TorsionResidual torsion_residual(const VField& V, const ConnectionPotential& A, const Box& box, int res);

KForm<Poly4> d_poly(const KForm<Poly4>& f);

// Homotopy primitive centered at `center`; throws if omega is not closed.
ConnectionPotential poincare_potential(const std::array<KForm<Poly4>, 3>& omega, const Vec4& center);

// Potential of omega_poly(V) centered at the domain center.
ConnectionPotential potential_for(const VField& V);

// nu' = det(G) G^{-t} nu, mu' = det(G) mu.
Vec4 gl3_map_point(const Mat3& G, const Vec4& x);
// V'(x') = G^{-t} V(x) G^{-1}.
VField gl3_transform(const VField& V, const Mat3& G);

}  // namespace toricg2
