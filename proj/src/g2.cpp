#include "toricg2/g2.hpp"

#include <stdexcept>

namespace toricg2 {

KForm<double> phi0() {
  using F = KForm<double>;
  F p = F::basis(7, {0, 1, 2});
  p -= F::basis(7, {0, 3, 4}) + F::basis(7, {0, 5, 6});
  p -= F::basis(7, {1, 3, 5}) + F::basis(7, {1, 6, 4});
  p -= F::basis(7, {2, 3, 6}) + F::basis(7, {2, 4, 5});
  return p;
}

KForm<double> star_phi0() {
  using F = KForm<double>;
  F p = F::basis(7, {3, 4, 5, 6});
  p -= F::basis(7, {1, 2, 3, 4}) + F::basis(7, {1, 2, 5, 6});
  p -= F::basis(7, {2, 0, 3, 5}) + F::basis(7, {2, 0, 6, 4});
  p -= F::basis(7, {0, 1, 3, 6}) + F::basis(7, {0, 1, 4, 5});
  return p;
}

G2Point make_g2_point(const KForm<double>& phi) {
  auto m = metric_from_three_form(phi);
  return G2Point{phi, std::move(m.g), std::move(m.vol)};
}

Eigen::VectorXd cross(const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const G2Point& at) {
  const auto flat = contract(Y, contract(X, at.phi));
  Eigen::VectorXd v(7);
  for (int i = 0; i < 7; ++i) v(i) = flat[1u << i];
  Eigen::LDLT<Eigen::MatrixXd> ldlt(at.g);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-14) throw std::invalid_argument("cross: degenerate metric");
  return ldlt.solve(v);
}

bool is_skew(const Eigen::MatrixXd& A, const Eigen::MatrixXd& g, double tol) {
  const Eigen::MatrixXd s = g * A + A.transpose() * g;
  return s.cwiseAbs().maxCoeff() <= tol * std::max(1.0, (g * A).cwiseAbs().maxCoeff());
}

double g2_defect(const Eigen::MatrixXd& A, const G2Point& at, double skew_tol) {
  if (!is_skew(A, at.g, skew_tol)) throw std::invalid_argument("in_g2: matrix is not skew-adjoint");
  return max_abs(derivation(A, at.phi));
}

bool in_g2(const Eigen::MatrixXd& A, const G2Point& at, double tol) { return g2_defect(A, at, tol) <= tol; }

namespace {

// so(7, g) basis: L^{-T} (E_ab - E_ba) L^T with g = L L^T.
std::vector<Eigen::MatrixXd> so7_basis(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("g2: metric not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd Linv_t = L.inverse().transpose();
  std::vector<Eigen::MatrixXd> out;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) {
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(7, 7);
      S(a, b) = 1.0;
      S(b, a) = -1.0;
      out.emplace_back(Linv_t * S * L.transpose());
    }
  return out;
}

struct Kernel {
  std::vector<Eigen::MatrixXd> so7;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
};

Kernel derivation_svd(const G2Point& at) {
  auto so7 = so7_basis(at.g);
  Eigen::MatrixXd M(35, static_cast<Eigen::Index>(so7.size()));
  for (std::size_t c = 0; c < so7.size(); ++c) {
    const auto d = derivation(so7[c], at.phi);
    for (std::size_t r = 0; r < d.size(); ++r) M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = d.at(r);
  }
  return Kernel{std::move(so7), Eigen::JacobiSVD<Eigen::MatrixXd>(M, Eigen::ComputeFullV)};
}

}  // namespace

int g2_stabilizer_dimension(const G2Point& at, double tol) {
  const auto k = derivation_svd(at);
  const auto& sv = k.svd.singularValues();
  const double cut = tol * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return 21 - rank;
}

std::vector<Eigen::MatrixXd> g2_basis(const G2Point& at) {
  const auto k = derivation_svd(at);
  const auto& sv = k.svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  if (21 - rank != 14) throw std::invalid_argument("g2_basis: stabilizer is not 14-dimensional");
  const Eigen::MatrixXd& V = k.svd.matrixV();
  std::vector<Eigen::MatrixXd> out;
  for (int c = rank; c < 21; ++c) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(7, 7);
    for (int j = 0; j < 21; ++j) A += V(j, c) * k.so7[static_cast<std::size_t>(j)];
    out.push_back(std::move(A));
  }
  return out;
}

}  // namespace toricg2
