#include "toricg2/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toricg2 {

MetricSampler ansatz_sampler(const VField& V, const ConnectionPotential& A) {
  return {7, [V, A](const Eigen::VectorXd& p) -> Eigen::MatrixXd {
            const Vec4 x = p.tail<4>();
            return ansatz_metric(V.value(x), A.eval(x));
          }};
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd at_offset(const MetricSampler& s, const VectorXd& x, int a, double ha, int b = -1, double hb = 0.0) {
  VectorXd y = x;
  y(a) += ha;
  if (b >= 0) y(b) += hb;
  return s.eval(y);
}

MatrixXd first(const MetricSampler& s, const VectorXd& x, int c, double h) {
  return (at_offset(s, x, c, h) - at_offset(s, x, c, -h)) / (2.0 * h);
}

MatrixXd second(const MetricSampler& s, const VectorXd& x, const MatrixXd& g0, int c, int d, double h) {
  if (c == d) return (at_offset(s, x, c, h) - 2.0 * g0 + at_offset(s, x, c, -h)) / (h * h);
  return (at_offset(s, x, c, h, d, h) - at_offset(s, x, c, h, d, -h) - at_offset(s, x, c, -h, d, h) +
          at_offset(s, x, c, -h, d, -h)) /
         (4.0 * h * h);
}

}  // namespace

MetricJet metric_jet(const MetricSampler& s, const Eigen::VectorXd& x, double h) {
  const int n = s.dim;
  if (x.size() != n) throw std::invalid_argument("metric_jet: point dimension mismatch");
  MetricJet j;
  j.g = s.eval(x);
  Eigen::LLT<MatrixXd> llt(j.g);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("metric_jet: metric not positive definite");
  j.ginv = llt.solve(MatrixXd::Identity(n, n));
  j.d1.resize(static_cast<std::size_t>(n));
  j.d2.resize(static_cast<std::size_t>(n * n));
  for (int c = 0; c < n; ++c) j.d1[static_cast<std::size_t>(c)] = (4.0 * first(s, x, c, 0.5 * h) - first(s, x, c, h)) / 3.0;
  for (int c = 0; c < n; ++c)
    for (int d = c; d < n; ++d) {
      const MatrixXd v = (4.0 * second(s, x, j.g, c, d, 0.5 * h) - second(s, x, j.g, c, d, h)) / 3.0;
      j.d2[static_cast<std::size_t>(c * n + d)] = v;
      j.d2[static_cast<std::size_t>(d * n + c)] = v;
    }
  return j;
}

namespace {

// Gamma^k_ij from a metric jet.
std::vector<MatrixXd> gamma_of(const MetricJet& j) {
  const auto n = static_cast<int>(j.g.rows());
  std::vector<MatrixXd> lower(static_cast<std::size_t>(n), MatrixXd::Zero(n, n));  // Gamma_{l,ij}
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        lower[static_cast<std::size_t>(l)](i, k) = 0.5 * (j.d1[static_cast<std::size_t>(i)](k, l) +
                                                          j.d1[static_cast<std::size_t>(k)](i, l) -
                                                          j.d1[static_cast<std::size_t>(l)](i, k));
  std::vector<MatrixXd> out(static_cast<std::size_t>(n), MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out[static_cast<std::size_t>(k)] += j.ginv(k, l) * lower[static_cast<std::size_t>(l)];
  return out;
}

}  // namespace

std::vector<Eigen::MatrixXd> christoffel(const MetricSampler& s, const Eigen::VectorXd& x, double h) {
  return gamma_of(metric_jet(s, x, h));
}

CurvatureData riemann(const MetricSampler& s, const Eigen::VectorXd& x, double h) {
  const MetricJet j = metric_jet(s, x, h);
  const int n = s.dim;
  const auto un = static_cast<std::size_t>(n);
  const std::vector<MatrixXd> G = gamma_of(j);

  // dG[c][a](b, d) = d_c Gamma^a_bd
  std::vector<std::vector<MatrixXd>> dG(un, std::vector<MatrixXd>(un, MatrixXd::Zero(n, n)));
  for (int c = 0; c < n; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    const MatrixXd dginv = -j.ginv * j.d1[uc] * j.ginv;
    for (int l = 0; l < n; ++l) {
      MatrixXd low(n, n), dlow(n, n);
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
          const auto ub = static_cast<std::size_t>(b), ud = static_cast<std::size_t>(d), ul = static_cast<std::size_t>(l);
          low(b, d) = 0.5 * (j.d1[ub](d, l) + j.d1[ud](b, l) - j.d1[ul](b, d));
          dlow(b, d) = 0.5 * (j.d2[uc * un + ub](d, l) + j.d2[uc * un + ud](b, l) - j.d2[uc * un + ul](b, d));
        }
      for (int a = 0; a < n; ++a)
        dG[uc][static_cast<std::size_t>(a)] += dginv(a, l) * low + j.ginv(a, l) * dlow;
    }
  }

  std::vector<double> up(un * un * un * un, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const auto ua = static_cast<std::size_t>(a), uc = static_cast<std::size_t>(c), ud = static_cast<std::size_t>(d);
          double r = dG[uc][ua](d, b) - dG[ud][ua](c, b);
          for (int e = 0; e < n; ++e) {
            const auto ue = static_cast<std::size_t>(e);
            r += G[ua](c, e) * G[ue](d, b) - G[ua](d, e) * G[ue](c, b);
          }
          up[((ua * un + static_cast<std::size_t>(b)) * un + uc) * un + ud] = r;
        }
  return CurvatureData(j.g, std::move(up));
}

CurvatureData::CurvatureData(Eigen::MatrixXd g, std::vector<double> upper)
    : n_(static_cast<int>(g.rows())), g_(std::move(g)), up_(std::move(upper)) {
  low_.assign(up_.size(), 0.0);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) {
          double s = 0.0;
          for (int e = 0; e < n_; ++e) s += g_(a, e) * up(e, b, c, d);
          low_[idx(a, b, c, d)] = s;
        }
  ricci_ = Eigen::MatrixXd::Zero(n_, n_);
  for (int b = 0; b < n_; ++b)
    for (int d = 0; d < n_; ++d)
      for (int a = 0; a < n_; ++a) ricci_(b, d) += up(a, b, a, d);
  for (int c = 0; c < n_; ++c)
    for (int d = c + 1; d < n_; ++d) {
      Eigen::MatrixXd m(n_, n_);
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) m(a, b) = up(a, b, c, d);
      omega_.push_back(std::move(m));
    }
}

double CurvatureData::norm() const {
  double m = 0.0;
  for (double v : low_) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureData::symmetry_defect() const {
  double m = 0.0;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) {
          const double r = riemann(a, b, c, d);
          m = std::max({m, std::abs(r + riemann(b, a, c, d)), std::abs(r + riemann(a, b, d, c)),
                        std::abs(r - riemann(c, d, a, b))});
        }
  return m;
}

double CurvatureData::bianchi_defect() const {
  double m = 0.0;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d)
          m = std::max(m, std::abs(riemann(a, b, c, d) + riemann(a, c, d, b) + riemann(a, d, b, c)));
  return m;
}

double CurvatureData::sectional(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
  double num = 0.0;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) num += riemann(a, b, c, d) * X(a) * Y(b) * X(c) * Y(d);
  const double xx = X.dot(g_ * X), yy = Y.dot(g_ * Y), xy = X.dot(g_ * Y);
  return num / (xx * yy - xy * xy);
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("orthonormal_frame: metric not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  return L.transpose().inverse();
}

std::vector<Eigen::MatrixXd> orthonormal_omega(const CurvatureData& data) {
  const int n = data.dim();
  const Eigen::MatrixXd F = orthonormal_frame(data.metric());
  const Eigen::MatrixXd Finv = F.inverse();
  // full antisymmetric family Omega_cd
  auto omega_cd = [&](int c, int d) -> Eigen::MatrixXd {
    if (c == d) return Eigen::MatrixXd::Zero(n, n);
    const auto& list = data.omega();
    const int lo = std::min(c, d), hi = std::max(c, d);
    const int k = lo * n - lo * (lo + 1) / 2 + (hi - lo - 1);
    return c < d ? list[static_cast<std::size_t>(k)] : Eigen::MatrixXd(-list[static_cast<std::size_t>(k)]);
  };
  std::vector<Eigen::MatrixXd> out;
  for (int al = 0; al < n; ++al)
    for (int be = al + 1; be < n; ++be) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double w = F(c, al) * F(d, be);
          if (w != 0.0) m += w * omega_cd(c, d);
        }
      out.push_back(Finv * m * F);
    }
  return out;
}

HolonomySpectrum holonomy_spectrum(const CurvatureData& data, double tol, double floor) {
  const auto om = orthonormal_omega(data);
  const int n = data.dim();
  Eigen::MatrixXd M(n * n, static_cast<Eigen::Index>(om.size()));
  for (std::size_t k = 0; k < om.size(); ++k)
    M.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(om[k].data(), n * n);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues();
  HolonomySpectrum out;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top < floor) return out;
  for (Eigen::Index i = 0; i < sv.size(); ++i) out.rank += sv(i) > tol * top;
  return out;
}

int holonomy_span_rank(const CurvatureData& data, double tol) { return holonomy_spectrum(data, tol).rank; }

double curvature_g2_defect(const CurvatureData& data, const G2Point& at) {
  const Eigen::MatrixXd& g = data.metric();
  if (at.g.rows() != g.rows() || (at.g - g).norm() > 1e-6 * g.norm())
    throw std::invalid_argument("curvature_in_g2: phi and curvature sampled in different frames");
  const Eigen::MatrixXd F = orthonormal_frame(g);
  const KForm<double> phi = pullback(at.phi, F);
  double worst = 0.0;
  const double scale = std::max(data.norm(), 1e-300);
  for (const auto& m : orthonormal_omega(data)) {
    const double size = m.cwiseAbs().maxCoeff();
    if (size <= 1e-9 * scale) continue;
    const double skew = (m + m.transpose()).cwiseAbs().maxCoeff() / size;
    worst = std::max({worst, skew, max_abs(derivation(m, phi)) / size});
  }
  return worst;
}

bool curvature_in_g2(const CurvatureData& data, const G2Point& at, double tol) {
  return curvature_g2_defect(data, at) <= tol;
}

}  // namespace toricg2
