#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "toricg2/forms.hpp"
#include "toricg2/g2.hpp"

using namespace toricg2;
using F = KForm<double>;

TEST_CASE("wedge of basis forms") {
  const F e1 = F::basis(7, {0});
  const F e2 = F::basis(7, {1});
  CHECK(wedge(e1, e2).get({0, 1}) == 1.0);
  CHECK(wedge(e2, e1).get({0, 1}) == -1.0);
  const F e12 = F::basis(7, {0, 1});
  CHECK(max_abs(wedge(e12, e12)) == 0.0);
  CHECK(wedge(F::basis(3, {0, 1}), F::basis(3, {1, 2})).degree() == 0);
  CHECK_THROWS(wedge(F::basis(6, {0}), F::basis(7, {0})));
}

TEST_CASE("phi0 wedge star phi0 is seven times the volume") {
  const auto ref = oracle::wedge(oracle::from(phi0()), oracle::from(star_phi0()));
  CHECK(oracle::get(ref, {0, 1, 2, 3, 4, 5, 6}) == doctest::Approx(7.0));
  CHECK(wedge(phi0(), star_phi0()).top() == doctest::Approx(7.0));
}

TEST_CASE("wedge and contract agree with the naive oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 3 + trial % 6;
    const int p = trial % 3;
    const int q = 1 + trial % 2;
    const F a = oracle::random_form(dim, p, rng);
    const F b = oracle::random_form(dim, q, rng);
    CHECK(oracle::max_diff(oracle::from(wedge(a, b)), oracle::wedge(oracle::from(a), oracle::from(b))) < 1e-12);
    std::vector<double> X(static_cast<std::size_t>(dim));
    for (auto& x : X) x = u(rng);
    CHECK(oracle::max_diff(oracle::from(contract(X, b)), oracle::contract(X, oracle::from(b))) < 1e-12);
  }
}

TEST_CASE("contraction examples") {
  CHECK(contract_basis(0, F::basis(7, {0, 1, 2})).get({1, 2}) == 1.0);
  CHECK(max_abs(contract_basis(3, F::basis(7, {0, 1, 2}))) == 0.0);
  const F c = contract_basis(0, phi0());
  const F expect = F::basis(7, {1, 2}) - F::basis(7, {3, 4}) - F::basis(7, {5, 6});
  CHECK(max_abs(c - expect) == 0.0);
  CHECK_THROWS(contract_basis(0, F::scalar(7, 1.0)));
}

TEST_CASE("contraction is an antiderivation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 1 + trial % 3;
    const F a = oracle::random_form(7, p, rng);
    const F b = oracle::random_form(7, 2, rng);
    Eigen::VectorXd X(7);
    for (int i = 0; i < 7; ++i) X(i) = u(rng);
    const F lhs = contract(X, wedge(a, b));
    const double s = (p % 2) ? -1.0 : 1.0;
    const F rhs = wedge(contract(X, a), b) + s * wedge(a, contract(X, b));
    CHECK(max_abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("hodge star") {
  const Eigen::MatrixXd I7 = Eigen::MatrixXd::Identity(7, 7);
  const F vol = volume_form(7);
  CHECK(max_abs(hodge(F::basis(7, {0}), I7, vol) - F::basis(7, {1, 2, 3, 4, 5, 6})) < 1e-14);
  CHECK(max_abs(hodge(phi0(), I7, vol) - star_phi0()) < 1e-14);
  CHECK(max_abs(hodge(hodge(F::basis(7, {0}), I7, vol), I7, vol) - F::basis(7, {0})) < 1e-14);
  CHECK_THROWS(hodge(F::basis(7, {0}), Eigen::MatrixXd::Zero(7, 7), vol));
}

TEST_CASE("hodge defining identity and involution for a random metric") {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd M = Eigen::MatrixXd::Random(7, 7);
  const Eigen::MatrixXd g = M * M.transpose() + 7.0 * Eigen::MatrixXd::Identity(7, 7);
  const F vol = volume_form(7, std::sqrt(g.determinant()));
  for (int k = 0; k <= 7; ++k) {
    const F a = oracle::random_form(7, k, rng);
    const F b = oracle::random_form(7, k, rng);
    const double lhs = wedge(b, hodge(a, g, vol)).top();
    CHECK(lhs == doctest::Approx(form_inner(b, a, g) * vol.top()).epsilon(1e-10));
    const double sign = ((k * (7 - k)) % 2) ? -1.0 : 1.0;
    CHECK(max_abs(hodge(hodge(a, g, vol), g, vol) - sign * a) < 1e-10);
  }
}

TEST_CASE("metric from three-form") {
  const auto m = metric_from_three_form(phi0());
  CHECK((m.g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(m.vol.top() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.orientation == 1);

  const auto m8 = metric_from_three_form(8.0 * phi0());
  CHECK((m8.g - 4.0 * Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);

  // swap E1, E2; the pulled back form induces the opposite orientation
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(7, 7);
  P.col(0).swap(P.col(1));
  const auto ms = metric_from_three_form(pullback(phi0(), P));
  CHECK((ms.g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ms.orientation == -1);
  // sign-fixed: -phi restores the orientation of e^{1..7}
  const auto mf = metric_from_three_form(-pullback(phi0(), P));
  CHECK(mf.orientation == 1);
  CHECK((mf.g - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);

  // general linear frame change: g = F^T F
  Eigen::MatrixXd G = Eigen::MatrixXd::Random(7, 7) + 3.0 * Eigen::MatrixXd::Identity(7, 7);
  if (G.determinant() < 0) G.col(0) *= -1.0;
  const auto mg = metric_from_three_form(pullback(phi0(), G));
  CHECK((mg.g - G.transpose() * G).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(mg.vol.top() == doctest::Approx(G.determinant()).epsilon(1e-10));

  CHECK_THROWS(metric_from_three_form(F::basis(7, {0, 1, 2})));
}

TEST_CASE("coframe exterior derivative") {
  using P = KForm<Poly1>;
  const P de1 = coframe_d(P::basis(7, {1}));
  CHECK(de1.get({2, 3}) == Poly1(2.0));
  const P df3 = coframe_d(P::basis(7, {6}));
  CHECK(df3.get({4, 5}) == Poly1(2.0));
  // d(r^2 e^1) = 2r dr e^1 + 2 r^2 e^23
  const P f = P::basis(7, {1}, Poly1::variable(0) * Poly1::variable(0));
  const P df = coframe_d(f);
  CHECK(df.get({0, 1}) == 2.0 * Poly1::variable(0));
  CHECK(df.get({2, 3}) == 2.0 * Poly1::variable(0) * Poly1::variable(0));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int k = 0; k <= 5; ++k) {
    P a(7, k);
    for (std::size_t i = 0; i < a.size(); ++i)
      a.at(i) = Poly1::monomial({u(rng) + 3}, u(rng)) + Poly1(static_cast<double>(u(rng)));
    const P dd = coframe_d(coframe_d(a));
    for (std::size_t i = 0; i < dd.size(); ++i) CHECK(dd.at(i).is_zero());
  }
}
