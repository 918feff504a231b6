#include "toricg2/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace toricg2 {

// ---------------------------------------------------------------------------------------------
// Graphs

std::vector<Eigen::Vector4i> slopes_at(const GraphR4& g, int v) {
  std::vector<Eigen::Vector4i> out;
  for (const auto& e : g.edges) {
    if (e.from && *e.from == v) out.push_back(e.slope);
    if (e.to && *e.to == v) out.push_back(-e.slope);
  }
  return out;
}

namespace {

bool primitive_in(const Eigen::Matrix4i& lattice, const Eigen::Vector4i& s) {
  const Eigen::Vector4d c = lattice.cast<double>().fullPivLu().solve(s.cast<double>());
  long long g = 0;
  for (int i = 0; i < 4; ++i) {
    const double r = std::round(c(i));
    if (std::abs(c(i) - r) > 1e-9) return false;
    g = std::gcd(g, static_cast<long long>(std::abs(r)));
  }
  return g == 1;
}

}  // namespace

GraphCheck check_graph(const GraphR4& g) {
  GraphCheck c;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    c.problems.push_back(msg);
  };
  if (std::abs(g.lattice.cast<double>().determinant()) < 0.5) fail(c.primitive, "lattice is degenerate");
  const auto nv = static_cast<int>(g.vertices.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    const std::string name = "edge " + std::to_string(k);
    for (const auto& end : {e.from, e.to})
      if (end && (*end < 0 || *end >= nv)) fail(c.consistent, name + " refers to a missing vertex");
    if (!c.consistent) continue;
    if (e.slope(3) != 0) fail(c.level, name + " leaves its mu level");
    if (!primitive_in(g.lattice, e.slope)) fail(c.primitive, name + " slope is not primitive");
    if (e.ray != (e.from.has_value() != e.to.has_value())) fail(c.consistent, name + " ray flag disagrees with its ends");
    if (e.from && e.to) {
      const Vec4 d = g.vertices[static_cast<std::size_t>(*e.to)] - g.vertices[static_cast<std::size_t>(*e.from)];
      const Vec4 s = e.slope.cast<double>();
      const double along = d.dot(s) / s.squaredNorm();
      if (along <= 0.0 || (d - along * s).norm() > 1e-9 * std::max(1.0, d.norm()))
        fail(c.consistent, name + " does not point along its slope");
    }
  }
  for (int v = 0; v < nv; ++v) {
    const auto s = slopes_at(g, v);
    const std::string name = "vertex " + std::to_string(v);
    if (s.size() != 3) fail(c.trivalent, name + " has valence " + std::to_string(s.size()));
    Eigen::Vector4i sum = Eigen::Vector4i::Zero();
    for (const auto& x : s) sum += x;
    if (!sum.isZero()) fail(c.balanced, name + " slopes do not sum to zero");
  }
  return c;
}

// ---------------------------------------------------------------------------------------------
// S^1 x C^3

Vec4 mmm_c3(const FlatC3Point& pt) {
  const cplx m = -std::conj(pt.z1 * pt.z2 * pt.z3);
  return {m.real(), 0.5 * (std::norm(pt.z2) - std::norm(pt.z3)), -0.5 * (std::norm(pt.z1) - std::norm(pt.z3)), m.imag()};
}

Mat3 B_c3(const FlatC3Point& pt) {
  const double a = std::norm(pt.z1), b = std::norm(pt.z2), c = std::norm(pt.z3);
  Mat3 B;
  B << 1, 0, 0, 0, a + c, c, 0, c, b + c;
  return B;
}

Mat3 V_c3(const FlatC3Point& pt) {
  const double a = std::norm(pt.z1), b = std::norm(pt.z2), c = std::norm(pt.z3);
  const double A = a * b + c * a + b * c;
  if (A <= 1e-300) throw std::invalid_argument("V_c3: singular orbit");
  Mat3 V;
  V << 1, 0, 0, 0, (b + c) / A, -c / A, 0, -c / A, (a + c) / A;
  return V;
}

FlatC3Point c3_torus_act(const FlatC3Point& pt, double s, double theta, double phi) {
  return {pt.x + s, pt.z1 * std::polar(1.0, theta), pt.z2 * std::polar(1.0, phi), pt.z3 * std::polar(1.0, -theta - phi)};
}

C3Orbit rho_inverse(const Vec4& value) {
  const double p1 = value(0), p2 = value(1), p3 = value(2), q = value(3);
  const double a = 2.0 * p3, b = -2.0 * p2, c = q * q + p1 * p1;
  const double x = std::max({0.0, a, b});
  auto f = [&](double t) { return t * (t - a) * (t - b) - c; };
  auto df = [&](double t) { return (t - a) * (t - b) + t * (t - b) + t * (t - a); };

  // f is increasing on [x, inf) with f(x) <= 0 <= f(x + max(1, c^(1/3))).
  double lo = x, hi = x + std::max(1.0, std::cbrt(c));
  double t = f(lo) >= 0.0 ? lo : hi;
  if (f(lo) < 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double ft = f(t);
      if (ft == 0.0) break;
      (ft < 0.0 ? lo : hi) = t;
      const double d = df(t);
      double next = d > 0.0 ? t - ft / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t)) || hi - lo <= 1e-15 * std::max(1.0, hi);
      t = next;
      if (done) break;
    }
  }

  C3Orbit o;
  o.t = t;
  o.moduli = Eigen::Vector3d(std::max(0.0, t - a), std::max(0.0, t - b), t);
  o.product = cplx(-p1, q);
  const double phase = std::abs(o.product) > 0.0 ? std::arg(o.product) : 0.0;
  o.representative = {0.0, cplx(std::sqrt(o.moduli(0)), 0.0), cplx(std::sqrt(o.moduli(1)), 0.0),
                      std::polar(std::sqrt(o.moduli(2)), phase)};
  return o;
}

// ---------------------------------------------------------------------------------------------
// (T^2 x R) x C^2

Vec4 mmm_t2rc2(const FlatT2RC2Point& pt) {
  const cplx zw = pt.z * pt.w;
  return {zw.real(), zw.imag(), pt.u, 0.5 * (std::norm(pt.z) - std::norm(pt.w))};
}

double t2rc2_sphere_defect(const FlatT2RC2Point& pt) {
  const Vec4 m = mmm_t2rc2(pt);
  const double s = std::norm(pt.z) + std::norm(pt.w);
  return m(3) * m(3) + m(0) * m(0) + m(1) * m(1) - 0.25 * s * s;
}

SigmaRelation sigma_relations_4d(cplx z, cplx w) {
  const cplx s12 = z * w;
  const double s3 = 0.5 * (std::norm(z) - std::norm(w));
  const double s4 = 0.5 * (std::norm(z) + std::norm(w));
  return {std::norm(s12) + s3 * s3 - s4 * s4, s4};
}

SigmaRelation sigma_relations_6d(cplx z1, cplx z2, cplx z3) {
  const cplx s12 = -std::conj(z1 * z2 * z3);
  const double s3 = 0.5 * (std::norm(z2) - std::norm(z3));
  const double s4 = 0.5 * (std::norm(z3) - std::norm(z1));
  const double s5 = std::norm(z3);
  return {std::norm(s12) - s5 * (s5 + 2.0 * s3) * (s5 - 2.0 * s4), s5 - std::max({0.0, -2.0 * s3, 2.0 * s4})};
}

GraphR4 flat_graph_c3() {
  GraphR4 g;
  g.vertices.push_back(Vec4::Zero());
  for (const Eigen::Vector4i& s : {Eigen::Vector4i(0, 0, -1, 0), Eigen::Vector4i(0, 1, 0, 0), Eigen::Vector4i(0, -1, 1, 0)})
    g.edges.push_back({0, std::nullopt, s, true});
  return g;
}

GraphR4 flat_graph_t2rc2() {
  GraphR4 g;
  g.edges.push_back({std::nullopt, std::nullopt, Eigen::Vector4i(0, 0, 1, 0), false});
  return g;
}

// ---------------------------------------------------------------------------------------------
// Bryant-Salamon

Eigen::Vector3d hopf(const Eigen::Quaterniond& p) {
  return (p.conjugate() * Eigen::Quaterniond(0.0, 1.0, 0.0, 0.0) * p).vec();
}

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void require_valid(const QuatPair& pt) {
  if (std::abs(pt.p.norm() - 1.0) > 1e-12 || std::abs(pt.q.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("QuatPair: p and q must be unit quaternions");
  if (!(pt.r > 0.0)) throw std::invalid_argument("QuatPair: r must be positive");
  if (pt.eps < 0.0) throw std::invalid_argument("QuatPair: eps must be non-negative");
}

Eigen::Quaterniond exp_imaginary(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (n == 0.0) return Eigen::Quaterniond::Identity();
  const Eigen::Vector3d u = std::sin(n) / n * v;
  return {std::cos(n), u(0), u(1), u(2)};
}

using F = KForm<double>;

F e(std::initializer_list<int> idx, double c = 1.0) { return F::basis(7, idx, c); }

}  // namespace

Vec4 bs_mmm(const QuatPair& pt) {
  require_valid(pt);
  const Eigen::Vector3d hp = hopf(pt.p), hq = hopf(pt.q);
  const double r3 = pt.r * pt.r * pt.r;
  const double c = 2.0 / (9.0 * kSqrt3);
  return {c * (r3 - 4.0 * pt.eps) * hq(0), c * (r3 - 4.0 * pt.eps) * hp(0), c * (r3 - pt.eps) * hp.dot(hq),
          2.0 / 27.0 * pt.r * (r3 - 4.0 * pt.eps) * (hp(1) * hq(2) - hp(2) * hq(1))};
}

Mat3 bs_Vinv(const QuatPair& pt) {
  const Vec4 m = bs_mmm(pt);
  const double r = pt.r, r3 = r * r * r, eps = pt.eps;
  if (std::abs(r3 - eps) <= 1e-14 * std::max(1.0, eps)) throw std::invalid_argument("bs_Vinv: r^3 = eps");
  const double d = 4.0 * (r3 - eps) / (9.0 * r);
  const double s = kSqrt3 / r;
  Mat3 M;
  M << d, -s * (2.0 * eps + r3) / (r3 - eps) * m(2), -s * m(1),  //
      -s * (2.0 * eps + r3) / (r3 - eps) * m(2), d, -s * m(0),  //
      -s * m(1), -s * m(0), 4.0 * (r3 - 4.0 * eps) / (9.0 * r);
  return M;
}

KForm<double> nk_sigma() { return (2.0 / (3.0 * kSqrt3)) * (e({1, 4}) + e({2, 5}) + e({3, 6})); }

KForm<double> nk_psi() {
  return (4.0 / (9.0 * kSqrt3)) *
         (e({2, 3, 4}) + e({3, 1, 5}) + e({1, 2, 6}) - e({1, 5, 6}) - e({2, 6, 4}) - e({3, 4, 5}));
}

KForm<double> nk_psi_hat() {
  return (4.0 / 27.0) * (-2.0 * e({1, 2, 3}) - 2.0 * e({4, 5, 6}) + e({1, 5, 6}) + e({2, 6, 4}) + e({3, 4, 5}) +
                         e({2, 3, 4}) + e({3, 1, 5}) + e({1, 2, 6}));
}

KForm<double> phi_bs(double r, double eps) {
  const Poly1 rr = Poly1::variable(0);
  const Poly1 c = (1.0 / 3.0) * (rr * rr * rr - eps);
  const KForm<Poly1> pot = nk_sigma().map([&](double x) { return Poly1(x) * c; });
  return -(4.0 / (3.0 * kSqrt3)) * eps * (e({1, 2, 3}) - e({4, 5, 6})) + at_radius(coframe_d(pot), r);
}

KForm<double> star_phi_bs(double r, double eps) {
  const F dr = e({0});
  const F s = nk_sigma();
  return (4.0 / 9.0) * eps * wedge(dr, e({1, 2, 3}) + e({4, 5, 6})) + (r * r * r - eps) * wedge(nk_psi_hat(), dr) +
         (0.5 * r * (r * r * r - 4.0 * eps)) * wedge(s, s);
}

std::array<Eigen::VectorXd, 3> bs_generators(const QuatPair& pt) {
  require_valid(pt);
  const Eigen::Vector3d hp = hopf(pt.p), hq = hopf(pt.q);
  std::array<Eigen::VectorXd, 3> U;
  for (auto& u : U) u = Eigen::VectorXd::Zero(7);
  U[0].segment<3>(1) << hp(0), hp(1), -hp(2);
  U[1].segment<3>(4) << hq(0), hq(1), -hq(2);
  U[2](1) = -1.0;
  U[2](4) = -1.0;
  return U;
}

Mat3 bs_frame_B(const QuatPair& pt) {
  const auto U = bs_generators(pt);
  const FormMetric m = metric_from_three_form(phi_bs(pt.r, pt.eps));
  Mat3 B;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      B(i, j) = U[static_cast<std::size_t>(i)].dot(m.g * U[static_cast<std::size_t>(j)]);
  return B;
}

Vec4 cone_mmm_from_forms(const QuatPair& pt) {
  const auto U = bs_generators(pt);
  const F s = nk_sigma();
  const double r = pt.r, r3 = r * r * r;
  Vec4 out;
  for (int i = 0; i < 3; ++i) {
    const auto j = static_cast<std::size_t>((i + 1) % 3), k = static_cast<std::size_t>((i + 2) % 3);
    out(i) = r3 * evaluate(s, std::vector<Eigen::VectorXd>{U[j], U[k]}) / 3.0;
  }
  out(3) = 0.5 * r3 * r * 0.5 * evaluate(nk_psi_hat(), std::vector<Eigen::VectorXd>{U[0], U[1], U[2]});
  return out;
}

QuatPair bs_flow(const QuatPair& pt, const QuatDirection& dir, double s) {
  QuatPair out = pt;
  out.r += s * dir.dr;
  out.p = pt.p * exp_imaginary(s * dir.a);
  out.q = pt.q * exp_imaginary(s * dir.b);
  out.p.normalize();
  out.q.normalize();
  return out;
}

Eigen::VectorXd bs_tangent(const QuatDirection& dir) {
  Eigen::VectorXd X(7);
  X << dir.dr, dir.a(0), dir.a(1), -dir.a(2), dir.b(0), dir.b(1), -dir.b(2);
  return X;
}

DifferentialCheck bs_mmm_differential_check(const QuatPair& pt, const QuatDirection& dir, double h) {
  require_valid(pt);
  DifferentialCheck out;
  out.finite_difference = (bs_mmm(bs_flow(pt, dir, h)) - bs_mmm(bs_flow(pt, dir, -h))) / (2.0 * h);
  const auto U = bs_generators(pt);
  const Eigen::VectorXd X = bs_tangent(dir);
  const F phi = phi_bs(pt.r, pt.eps);
  for (int i = 0; i < 3; ++i) {
    const auto j = static_cast<std::size_t>((i + 1) % 3), k = static_cast<std::size_t>((i + 2) % 3);
    out.from_forms(i) = evaluate(phi, std::vector<Eigen::VectorXd>{U[j], U[k], X});
  }
  out.from_forms(3) = evaluate(star_phi_bs(pt.r, pt.eps), std::vector<Eigen::VectorXd>{U[0], U[1], U[2], X});
  out.residual = (out.finite_difference - out.from_forms).cwiseAbs().maxCoeff();
  return out;
}

GraphR4 bs_graph(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("bs_graph: eps must be positive");
  const double k = 2.0 * eps / (3.0 * kSqrt3);
  GraphR4 g;
  g.vertices = {Vec4(0, 0, k, 0), Vec4(0, 0, -k, 0)};
  g.edges = {
      {0, std::nullopt, Eigen::Vector4i(1, 1, 1, 0), true},
      {0, std::nullopt, Eigen::Vector4i(-1, -1, 1, 0), true},
      {1, std::nullopt, Eigen::Vector4i(1, -1, -1, 0), true},
      {1, std::nullopt, Eigen::Vector4i(-1, 1, -1, 0), true},
      {0, 1, Eigen::Vector4i(0, 0, -2, 0), false},
  };
  // lattice of the effective torus: (1,1,1) together with the even sublattice of the first two axes
  g.lattice.col(0) = Eigen::Vector4i(2, 0, 0, 0);
  g.lattice.col(1) = Eigen::Vector4i(0, 2, 0, 0);
  g.lattice.col(2) = Eigen::Vector4i(1, 1, 1, 0);
  g.lattice.col(3) = Eigen::Vector4i(0, 0, 0, 1);
  return g;
}

// ---------------------------------------------------------------------------------------------
// Quadric

Vec4 quadric_mmm(const QuadricPoint& z, double f_prime) {
  cplx s = 0.0;
  for (const auto& c : z) s += c * c;
  if (std::abs(s - 1.0) > 1e-10) throw std::invalid_argument("quadric_mmm: point is not on the quadric");
  const cplx m = 0.5 * (std::conj(z[0]) * std::conj(z[0]) + std::conj(z[1]) * std::conj(z[1]));
  return {m.real(), -f_prime * (z[2] * std::conj(z[3])).imag(), f_prime * (z[0] * std::conj(z[1])).imag(), m.imag()};
}

QuadricPoint quadric_rotate(const QuadricPoint& z, int which, double s) {
  if (which != 2 && which != 3) throw std::invalid_argument("quadric_rotate: which must be 2 or 3");
  const std::size_t a = which == 2 ? 0 : 2, b = a + 1;
  QuadricPoint out = z;
  out[a] = std::cos(s) * z[a] - std::sin(s) * z[b];
  out[b] = std::sin(s) * z[a] + std::cos(s) * z[b];
  return out;
}

double stenzel_f_prime(double norm_sq, double k) {
  if (norm_sq < 1.0) throw std::invalid_argument("stenzel_f_prime: |z|^2 >= 1 on the quadric");
  if (!(k > 0.0)) throw std::invalid_argument("stenzel_f_prime: k must be positive");
  const double u = std::acosh(norm_sq);
  if (u < 1e-3) {
    // G(u) = k u^3 (1 + u^2/5 + ...), sinh u = u (1 + u^2/6 + ...)
    return std::cbrt(k) * (1.0 + u * u / 15.0 - u * u / 6.0);
  }
  const double G = 3.0 * k * (std::sinh(2.0 * u) / 4.0 - u / 2.0);
  return std::cbrt(G) / std::sinh(u);
}

}  // namespace toricg2
