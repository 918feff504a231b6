#include "toricg2/ansatz.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace toricg2 {

std::vector<Vec4> Box::grid(int res) const {
  if (res < 2) throw std::invalid_argument("Box::grid: resolution must be >= 2");
  std::vector<Vec4> pts;
  pts.reserve(static_cast<std::size_t>(res * res * res * res));
  const Vec4 step = (hi - lo) / static_cast<double>(res - 1);
  for (int a = 0; a < res; ++a)
    for (int b = 0; b < res; ++b)
      for (int c = 0; c < res; ++c)
        for (int d = 0; d < res; ++d)
          pts.push_back(lo + Vec4(a * step(0), b * step(1), c * step(2), d * step(3)));
  return pts;
}

// ---------------------------------------------------------------------------------------------
// PolyMatrix

PolyMatrix PolyMatrix::diagonal(const Poly4& a, const Poly4& b, const Poly4& c) {
  PolyMatrix m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

PolyMatrix PolyMatrix::constant(const Mat3& v) {
  PolyMatrix m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m(i, j) = Poly4(0.5 * (v(i, j) + v(j, i)));
  return m;
}

int PolyMatrix::degree() const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, p.degree());
  return d;
}

Mat3 PolyMatrix::eval(const Vec4& x) const { return eval_as<double>(x); }

PolyMatrix PolyMatrix::derivative(int var) const {
  PolyMatrix m;
  for (std::size_t i = 0; i < 6; ++i) m.e_[i] = e_[i].derivative(var);
  return m;
}

bool PolyMatrix::is_diagonal() const { return e_[3].is_zero() && e_[4].is_zero() && e_[5].is_zero(); }

PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
  for (std::size_t i = 0; i < 6; ++i) a.e_[i] += b.e_[i];
  return a;
}

PolyMatrix operator*(double s, PolyMatrix a) {
  for (auto& p : a.e_) p *= s;
  return a;
}

// ---------------------------------------------------------------------------------------------
// VField

struct VField::PolyData {
  PolyMatrix v;
  std::array<PolyMatrix, 4> d1;
  std::array<std::array<PolyMatrix, 4>, 4> d2;
};

VField VField::from_polynomial(PolyMatrix p, Box domain) {
  auto data = std::make_shared<PolyData>();
  data->v = std::move(p);
  for (int a = 0; a < 4; ++a) data->d1[static_cast<std::size_t>(a)] = data->v.derivative(a);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      data->d2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          data->d1[static_cast<std::size_t>(a)].derivative(b);
  VField f;
  f.kind_ = Kind::polynomial;
  f.domain_ = domain;
  f.poly_ = std::move(data);
  return f;
}

VField VField::from_callable(Fn fn, Box domain) {
  VField f;
  f.kind_ = Kind::callable;
  f.domain_ = domain;
  f.fn_ = std::move(fn);
  return f;
}

VField VField::with_domain(const Box& b) const {
  VField f = *this;
  f.domain_ = b;
  return f;
}

const PolyMatrix& VField::poly() const {
  if (kind_ != Kind::polynomial) throw std::logic_error("VField: not of polynomial kind");
  return poly_->v;
}

Mat3 VField::value(const Vec4& x) const {
  if (kind_ == Kind::polynomial) return poly_->v.eval(x);
  const Mat3 m = fn_(x);
  return 0.5 * (m + m.transpose());
}

VJet VField::jet(const Vec4& x) const {
  VJet j;
  if (kind_ == Kind::polynomial) {
    j.value = poly_->v.eval(x);
    for (std::size_t a = 0; a < 4; ++a) {
      j.d1[a] = poly_->d1[a].eval(x);
      for (std::size_t b = 0; b < 4; ++b) j.d2[a][b] = poly_->d2[a][b].eval(x);
    }
    return j;
  }
  // Central differences; the second-derivative step is larger to balance rounding.
  Vec4 h, h2;
  for (int a = 0; a < 4; ++a) {
    h(a) = 1e-5 * (1.0 + std::abs(x(a)));
    h2(a) = 1e-4 * (1.0 + std::abs(x(a)));
  }
  auto f = [&](const Vec4& y) { return value(y); };
  j.value = f(x);
  for (int a = 0; a < 4; ++a) {
    const Vec4 ea = Vec4::Unit(a);
    j.d1[static_cast<std::size_t>(a)] = (f(x + h(a) * ea) - f(x - h(a) * ea)) / (2.0 * h(a));
    j.d2[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] =
        (f(x + h2(a) * ea) - 2.0 * j.value + f(x - h2(a) * ea)) / (h2(a) * h2(a));
    for (int b = 0; b < a; ++b) {
      const Vec4 eb = Vec4::Unit(b);
      const Mat3 m = (f(x + h2(a) * ea + h2(b) * eb) - f(x + h2(a) * ea - h2(b) * eb) -
                      f(x - h2(a) * ea + h2(b) * eb) + f(x - h2(a) * ea - h2(b) * eb)) /
                     (4.0 * h2(a) * h2(b));
      j.d2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = m;
      j.d2[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = m;
    }
  }
  return j;
}

Eigen::Matrix<Jet1, 3, 3> VField::jet1(const Vec4& x) const {
  const VJet j = jet(x);
  Eigen::Matrix<Jet1, 3, 3> m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Vec4 g;
      for (std::size_t a = 0; a < 4; ++a) g(static_cast<int>(a)) = j.d1[a](r, c);
      m(r, c) = make_jet1(j.value(r, c), g);
    }
  return m;
}

Eigen::Matrix<Jet2, 3, 3> VField::jet2(const Vec4& x) const {
  const VJet j = jet(x);
  Eigen::Matrix<Jet2, 3, 3> m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Vec4 g;
      Mat4 H;
      for (std::size_t a = 0; a < 4; ++a) {
        g(static_cast<int>(a)) = j.d1[a](r, c);
        for (std::size_t b = 0; b < 4; ++b) H(static_cast<int>(a), static_cast<int>(b)) = j.d2[a][b](r, c);
      }
      m(r, c) = make_jet2(j.value(r, c), g, H);
    }
  return m;
}

// ---------------------------------------------------------------------------------------------
// Connection potentials and polynomial forms on R^4

KForm<Poly4> d_poly(const KForm<Poly4>& f) {
  if (f.degree() + 1 > f.dim()) return KForm<Poly4>(f.dim(), 0);
  KForm<Poly4> r(f.dim(), f.degree() + 1);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const unsigned m = f.mask_at(j);
    for (int a = 0; a < f.dim(); ++a) {
      const int s = detail::wedge_sign(1u << a, m);
      if (s == 0) continue;
      const Poly4 der = f.at(j).derivative(a);
      if (s > 0)
        r[(1u << a) | m] += der;
      else
        r[(1u << a) | m] -= der;
    }
  }
  return r;
}

std::array<KForm<Poly4>, 3> ConnectionPotential::d() const {
  std::array<KForm<Poly4>, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    KForm<Poly4> one(4, 1);
    for (std::size_t b = 0; b < 4; ++b) one[1u << b] = a[i][b];
    out[i] = d_poly(one);
  }
  return out;
}

ConnectionPotential poincare_potential(const std::array<KForm<Poly4>, 3>& omega, const Vec4& center) {
  ConnectionPotential A;
  const std::array<double, 4> c{center(0), center(1), center(2), center(3)};
  const std::array<double, 4> minus_c{-c[0], -c[1], -c[2], -c[3]};
  for (std::size_t l = 0; l < 3; ++l) {
    const auto& w = omega[l];
    if (w.dim() != 4 || w.degree() != 2) throw std::invalid_argument("poincare_potential: need 2-forms on R^4");
    double scale = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n) scale = std::max(scale, w.at(n).max_abs_coeff());
    const auto dw = d_poly(w);
    for (std::size_t n = 0; n < dw.size(); ++n)
      if (dw.at(n).max_abs_coeff() > 1e-9 * std::max(1.0, scale))
        throw std::invalid_argument("poincare_potential: omega is not closed");

    std::array<Poly4, 4> acc{};
    for (std::size_t n = 0; n < w.size(); ++n) {
      const unsigned m = w.mask_at(n);
      const int a = std::countr_zero(m);
      const int b = std::countr_zero(m & (m - 1));
      const Poly4 shifted = w.at(n).shifted(c);
      for (int d = 0; d <= shifted.degree(); ++d) {
        const Poly4 h = shifted.homogeneous_part(d) * (1.0 / (d + 2));
        acc[static_cast<std::size_t>(b)] += Poly4::variable(a) * h;
        acc[static_cast<std::size_t>(a)] -= Poly4::variable(b) * h;
      }
    }
    for (std::size_t b = 0; b < 4; ++b) A.a[l][b] = acc[b].shifted(minus_c).pruned(1e-13 * std::max(1.0, scale));
  }
  return A;
}

std::array<KForm<Poly4>, 3> omega_poly(const PolyMatrix& V) {
  std::array<std::array<Poly4, 3>, 3> adjm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      adjm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = V(i1, j1) * V(i2, j2) - V(i1, j2) * V(i2, j1);
    }
  auto adj = [&](int r, int c) -> const Poly4& { return adjm[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
  std::array<KForm<Poly4>, 3> out;
  for (int l = 0; l < 3; ++l) {
    const int j = (l + 1) % 3, k = (l + 2) % 3;
    KForm<Poly4> w(4, 2);
    for (int i = 0; i < 3; ++i) {
      const Poly4 z = adj(k, i).derivative(j) - adj(j, i).derivative(k);
      w[(1u << i) | (1u << kMu)] += z;
      const int ij = (i + 1) % 3, ik = (i + 2) % 3;
      const Poly4 wv = V(l, i).derivative(kMu);
      // dnu_ij ^ dnu_ik in increasing-index orientation
      if (ij < ik)
        w[(1u << ij) | (1u << ik)] += wv;
      else
        w[(1u << ij) | (1u << ik)] -= wv;
    }
    out[static_cast<std::size_t>(l)] = w;
  }
  return out;
}

ConnectionPotential potential_for(const VField& V) { return poincare_potential(omega_poly(V.poly()), V.domain().center()); }

// ---------------------------------------------------------------------------------------------
// Pointwise quantities

bool positive_definite(const Mat3& V) {
  return V(0, 0) > 0.0 && V(0, 0) * V(1, 1) - V(0, 1) * V(1, 0) > 0.0 && V.determinant() > 0.0;
}

double min_leading_minor(const VField& V, const Box& box, int res) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& x : box.grid(res)) {
    const Mat3 v = V.value(x);
    m = std::min({m, v(0, 0), v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0), v.determinant()});
  }
  return m;
}

KForm<double> star_phi_quadratic(const Mat3& V, const Eigen::Matrix<double, 3, 4>& A) {
  using F = KForm<double>;
  const Mat3 adj = adj3(V);
  const double det = det3(V);
  std::array<F, 3> dnu, theta;
  for (int a = 0; a < 3; ++a) dnu[static_cast<std::size_t>(a)] = F::basis(7, {3 + a});
  const F dmu = F::basis(7, {6});
  for (int i = 0; i < 3; ++i) {
    F t = F::basis(7, {i});
    for (int b = 0; b < 4; ++b) t += F::basis(7, {3 + b}, A(i, b));
    theta[static_cast<std::size_t>(i)] = t;
  }
  F s(7, 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += adj(a, b) * wedge(dnu[static_cast<std::size_t>(a)], theta[static_cast<std::size_t>(b)]);
  F out = wedge(wedge(wedge(theta[0], theta[1]), theta[2]), dmu);
  out += (0.5 / det) * wedge(s, s);
  F t(7, 3);
  for (std::size_t i = 0; i < 3; ++i) t += wedge(theta[i], wedge(dnu[(i + 1) % 3], dnu[(i + 2) % 3]));
  out += det * wedge(dmu, t);
  return out;
}

Eigen::Matrix<double, 7, 7> ansatz_metric(const Mat3& V, const Eigen::Matrix<double, 3, 4>& A) {
  const Mat3 adj = adj3(V);
  const double det = det3(V);
  Eigen::Matrix<double, 3, 7> Theta = Eigen::Matrix<double, 3, 7>::Zero();
  Theta.leftCols<3>().setIdentity();
  Theta.rightCols<4>() = A;
  Eigen::Matrix<double, 7, 7> g = Theta.transpose() * (adj / det) * Theta;
  g.block<3, 3>(3, 3) += adj;
  g(6, 6) += det;
  return g;
}

Structure<double> build_structure(const VField& V, const ConnectionPotential& A, const Vec4& x) {
  const Mat3 v = V.value(x);
  if (!positive_definite(v)) throw std::invalid_argument("build_structure: V not positive definite");
  return structure_forms<double>(v, A.eval(x));
}

Mat3 Z_of(const VField& V, const Vec4& x) { return z_matrix(V.jet1(x)); }

Mat3 Z_alt(const VField& V, const Vec4& x) {
  const VJet j = V.jet(x);
  Mat3 Z = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    const int jj = (i + 1) % 3, kk = (i + 2) % 3;
    for (int l = 0; l < 3; ++l)
      for (std::size_t a = 0; a < 3; ++a)
        Z(l, i) += j.d1[a](jj, l) * j.value(kk, static_cast<int>(a)) - j.d1[a](kk, l) * j.value(jj, static_cast<int>(a));
  }
  return Z;
}

Mat3 W_of(const VField& V, const Vec4& x) { return V.jet(x).d1[kMu]; }

namespace {

template <class S>
std::array<KForm<S>, 3> assemble_omega(const Eigen::Matrix<S, 3, 3>& Z, const Eigen::Matrix<S, 3, 3>& W) {
  std::array<KForm<S>, 3> out;
  for (int l = 0; l < 3; ++l) {
    KForm<S> w(4, 2);
    for (int i = 0; i < 3; ++i) {
      w += KForm<S>::basis(4, {i, kMu}, Z(l, i));
      w += KForm<S>::basis(4, {(i + 1) % 3, (i + 2) % 3}, W(l, i));
    }
    out[static_cast<std::size_t>(l)] = w;
  }
  return out;
}

}  // namespace

std::array<KForm<double>, 3> omega_at(const VField& V, const Vec4& x) {
  return assemble_omega<double>(Z_of(V, x), W_of(V, x));
}

std::array<KForm<double>, 3> d_omega_at(const VField& V, const Vec4& x) {
  const Eigen::Matrix<Jet2, 3, 3> v = V.jet2(x);
  const Eigen::Matrix<Jet1, 3, 3> Z = z_matrix(v);
  Eigen::Matrix<Jet1, 3, 3> W;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) W(r, c) = v(r, c).derivatives()(kMu);
  const auto omega = assemble_omega<Jet1>(Z, W);
  std::array<KForm<double>, 3> out;
  for (std::size_t l = 0; l < 3; ++l) out[l] = exterior_derivative(omega[l], 0);
  return out;
}

DOmegaComponents d_omega_components(const std::array<KForm<double>, 3>& domega) {
  DOmegaComponents c;
  for (int l = 0; l < 3; ++l) {
    const auto& f = domega[static_cast<std::size_t>(l)];
    for (int i = 0; i < 3; ++i) c.E(l, i) = f.get({(i + 1) % 3, (i + 2) % 3, kMu});
    c.divergence(l) = f.get({0, 1, 2});
  }
  return c;
}

Eigen::Vector3d div_residual(const VField& V, const Vec4& x) {
  const VJet j = V.jet(x);
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < 3; ++i) r(c) += j.d1[i](static_cast<int>(i), c);
  return r;
}

Mat3 elliptic_residual(const VField& V, const Vec4& x) {
  const VJet j = V.jet(x);
  Mat3 r = j.d2[kMu][kMu];
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) r += j.value(static_cast<int>(a), static_cast<int>(b)) * j.d2[a][b];
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          r(i, k) -= j.d1[static_cast<std::size_t>(b)](i, a) * j.d1[static_cast<std::size_t>(a)](k, b);
  return r;
}

TorsionResidual torsion_residual(const VField& V, const ConnectionPotential& A, const Box& box, int res) {
  TorsionResidual out;
  for (const Vec4& x : box.grid(res)) {
    const auto xv = jet1_variables(x);
    const Eigen::Matrix<Jet1, 3, 4> a = A.eval_as<Jet1>(xv);
    const Eigen::Matrix<Jet1, 3, 3> v = V.jet1(x);

    const auto omega = omega_at(V, x);
    double scale = 1.0;
    for (int l = 0; l < 3; ++l) {
      KForm<Jet1> one(4, 1);
      for (int b = 0; b < 4; ++b) one[1u << b] = a(l, b);
      const auto da = exterior_derivative(one, 0);
      scale = std::max(scale, max_abs(omega[static_cast<std::size_t>(l)]));
      out.potential_mismatch = std::max(out.potential_mismatch, max_abs(da - omega[static_cast<std::size_t>(l)]));
    }
    if (out.potential_mismatch > 1e-6 * scale) throw std::invalid_argument("torsion_residual: inconsistent potential");

    const auto s = structure_forms<Jet1>(v, a);
    out.dphi = std::max(out.dphi, max_abs(exterior_derivative(s.phi, 3)));
    out.dstar_phi = std::max(out.dstar_phi, max_abs(exterior_derivative(s.star_phi, 3)));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// GL(3)

Vec4 gl3_map_point(const Mat3& G, const Vec4& x) {
  const double d = G.determinant();
  Vec4 y;
  y.head<3>() = d * G.transpose().inverse() * x.head<3>();
  y(kMu) = d * x(kMu);
  return y;
}

VField gl3_transform(const VField& V, const Mat3& G) {
  const double d = G.determinant();
  if (std::abs(d) < 1e-14 * std::max(1.0, G.cwiseAbs().maxCoeff())) throw std::invalid_argument("gl3_transform: singular G");
  const Mat3 Ginv = G.inverse();
  const Mat3 Ginv_t = Ginv.transpose();

  Box img;
  img.lo.setConstant(std::numeric_limits<double>::infinity());
  img.hi.setConstant(-std::numeric_limits<double>::infinity());
  const Box& b = V.domain();
  for (int corner = 0; corner < 16; ++corner) {
    Vec4 x;
    for (int a = 0; a < 4; ++a) x(a) = (corner >> a & 1) ? b.hi(a) : b.lo(a);
    const Vec4 y = gl3_map_point(G, x);
    img.lo = img.lo.cwiseMin(y);
    img.hi = img.hi.cwiseMax(y);
  }

  if (V.kind() == VField::Kind::callable) {
    const Mat3 Gt = G.transpose();
    auto fn = [V, Ginv, Ginv_t, Gt, d](const Vec4& y) {
      Vec4 x;
      x.head<3>() = Gt * y.head<3>() / d;
      x(kMu) = y(kMu) / d;
      return Mat3(Ginv_t * V.value(x) * Ginv);
    };
    return VField::from_callable(fn, img);
  }

  // x(y): nu = G^t nu' / det G, mu = mu' / det G
  std::array<Poly4, 4> subs;
  for (int a = 0; a < 3; ++a) {
    Poly4 s;
    for (int c = 0; c < 3; ++c) s += Poly4::variable(c) * (G(c, a) / d);
    subs[static_cast<std::size_t>(a)] = s;
  }
  subs[kMu] = Poly4::variable(kMu) * (1.0 / d);
  const PolyMatrix& P = V.poly();
  std::array<std::array<Poly4, 3>, 3> sub;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) sub[i][j] = P(static_cast<int>(i), static_cast<int>(j)).compose<4>(subs);
  PolyMatrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Poly4 acc;
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) acc += sub[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] * (Ginv_t(i, a) * Ginv(c, j));
      out(i, j) = acc;
    }
  return VField::from_polynomial(out, img);
}

}  // namespace toricg2
