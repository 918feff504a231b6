#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "toricg2/g2.hpp"

using namespace toricg2;
using F = KForm<double>;

namespace {

Eigen::VectorXd E(int i) { return Eigen::VectorXd::Unit(7, i); }

double phi_value(const F& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
  return evaluate(phi, std::vector<Eigen::VectorXd>{x, y, z});
}

}  // namespace

TEST_CASE("canonical forms") {
  const F p = phi0();
  CHECK(p.get({0, 1, 2}) == 1.0);
  CHECK(p.get({0, 3, 4}) == -1.0);
  CHECK(p.get({1, 6, 4}) == -1.0);
  int nonzero = 0;
  for (std::size_t i = 0; i < p.size(); ++i) nonzero += p.at(i) != 0.0;
  CHECK(nonzero == 7);
  const F s = star_phi0();
  CHECK(s.get({3, 4, 5, 6}) == 1.0);
  CHECK(s.get({1, 2, 3, 4}) == -1.0);
  const Eigen::MatrixXd I7 = Eigen::MatrixXd::Identity(7, 7);
  CHECK(max_abs(hodge(p, I7, volume_form(7)) - s) < 1e-14);
}

TEST_CASE("cross product at phi0") {
  const G2Point at = make_g2_point(phi0());
  CHECK((cross(E(0), E(1), at) - E(2)).norm() < 1e-14);
  // Signs follow from the component list: phi0(E4, E7, E3) = -1 and phi0(E1, E4, E5) = -1.
  CHECK((cross(E(3), E(6), at) + E(2)).norm() < 1e-14);
  CHECK((cross(E(0), E(3), at) + E(4)).norm() < 1e-14);
  CHECK(phi_value(at.phi, E(0), E(3), E(4)) == -1.0);
  // span{E3, E4, E7} is still closed under the cross product
  CHECK((cross(E(2), E(3), at) - phi_value(at.phi, E(2), E(3), E(6)) * E(6)).norm() < 1e-14);
}

TEST_CASE("cross product identities on random vectors") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  Eigen::MatrixXd G = Eigen::MatrixXd::Random(7, 7) + 3.0 * Eigen::MatrixXd::Identity(7, 7);
  if (G.determinant() < 0) G.col(0) *= -1.0;
  for (const G2Point& at : {make_g2_point(phi0()), make_g2_point(pullback(phi0(), G))}) {
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd X(7), Y(7);
      for (int i = 0; i < 7; ++i) {
        X(i) = n(rng);
        Y(i) = n(rng);
      }
      const Eigen::VectorXd c = cross(X, Y, at);
      CHECK(std::abs(c.dot(at.g * X)) < 1e-10);
      CHECK(std::abs(c.dot(at.g * Y)) < 1e-10);
      const double xx = X.dot(at.g * X), yy = Y.dot(at.g * Y), xy = X.dot(at.g * Y);
      CHECK(c.dot(at.g * c) == doctest::Approx(xx * yy - xy * xy).epsilon(1e-10));
      CHECK((cross(Y, X, at) + c).norm() < 1e-10);
    }
  }
}

TEST_CASE("g2 membership") {
  const G2Point at = make_g2_point(phi0());
  CHECK(in_g2(Eigen::MatrixXd::Zero(7, 7), at));
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(7, 7);
  R(0, 1) = -1.0;
  R(1, 0) = 1.0;
  CHECK_FALSE(in_g2(R, at));
  Eigen::MatrixXd nonskew = Eigen::MatrixXd::Identity(7, 7);
  CHECK_THROWS(in_g2(nonskew, at));
  CHECK(g2_stabilizer_dimension(at) == 14);
}

TEST_CASE("g2 basis") {
  Eigen::MatrixXd G = Eigen::MatrixXd::Random(7, 7) + 3.0 * Eigen::MatrixXd::Identity(7, 7);
  if (G.determinant() < 0) G.col(0) *= -1.0;
  for (const G2Point& at : {make_g2_point(phi0()), make_g2_point(pullback(phi0(), G))}) {
    const auto basis = g2_basis(at);
    REQUIRE(basis.size() == 14);
    Eigen::MatrixXd flat(49, 14);
    for (int i = 0; i < 14; ++i) {
      CHECK(in_g2(basis[static_cast<std::size_t>(i)], at));
      CHECK(is_skew(basis[static_cast<std::size_t>(i)], at.g, 1e-10));
      flat.col(i) = Eigen::Map<const Eigen::VectorXd>(basis[static_cast<std::size_t>(i)].data(), 49);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(flat);
    CHECK(lu.rank() == 14);
    // closed under commutators
    const Eigen::MatrixXd proj = flat * flat.completeOrthogonalDecomposition().pseudoInverse();
    for (int i = 0; i < 14; ++i)
      for (int j = i + 1; j < 14; ++j) {
        const auto& a = basis[static_cast<std::size_t>(i)];
        const auto& b = basis[static_cast<std::size_t>(j)];
        const Eigen::MatrixXd c = a * b - b * a;
        const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(c.data(), 49);
        CHECK((proj * v - v).norm() < 1e-9);
      }
  }
  const G2Point at = make_g2_point(phi0());
  for (const auto& A : g2_basis(at)) CHECK(max_abs(derivation(A, star_phi0())) < 1e-12);
}
