#include "doctest.h"

#include <cmath>

#include "toricg2/geometry.hpp"
#include "toricg2/pde.hpp"

using namespace toricg2;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd point7(const Vec4& x) {
  VectorXd p(7);
  p << 0.1, -0.2, 0.3, x(0), x(1), x(2), x(3);
  return p;
}

// round S^2 in (theta, phi) times a flat factor
MetricSampler sphere_block(int dim) {
  return {dim, [dim](const VectorXd& p) -> MatrixXd {
            MatrixXd g = MatrixXd::Identity(dim, dim);
            g(1, 1) = std::sin(p(0)) * std::sin(p(0));
            return g;
          }};
}

}  // namespace

TEST_CASE("christoffel symbols") {
  const MetricSampler flat{7, [](const VectorXd&) -> MatrixXd { return MatrixXd::Identity(7, 7) * 2.0; }};
  for (const auto& G : christoffel(flat, VectorXd::Constant(7, 0.3))) CHECK(G.norm() == 0.0);

  const MetricSampler cubic{7, [](const VectorXd& p) -> MatrixXd {
                              MatrixXd g = MatrixXd::Identity(7, 7);
                              g(6, 6) = p(6) * p(6) * p(6);
                              return g;
                            }};
  VectorXd x = VectorXd::Zero(7);
  x(6) = 1.5;
  const auto G = christoffel(cubic, x);
  for (int k = 0; k < 7; ++k)
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        const double want = (k == 6 && i == 6 && j == 6) ? 1.5 / x(6) : 0.0;
        CHECK(std::abs(G[static_cast<std::size_t>(k)](i, j) - want) < 1e-9);
      }

  const VField poly = poly_ex_example();
  const auto s = ansatz_sampler(poly, potential_for(poly));
  for (const auto& Gk : christoffel(s, point7(Vec4(0.2, 0.05, -0.1, 1.2)))) CHECK((Gk - Gk.transpose()).norm() < 1e-9);

  const MetricSampler bad{2, [](const VectorXd&) -> MatrixXd { return -MatrixXd::Identity(2, 2); }};
  CHECK_THROWS_AS(christoffel(bad, VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("sphere curvature") {
  VectorXd x = VectorXd::Zero(4);
  x(0) = 0.9;
  const CurvatureData R = riemann(sphere_block(4), x);
  CHECK(R.riemann(0, 1, 0, 1) == doctest::Approx(std::sin(0.9) * std::sin(0.9)).epsilon(1e-7));
  CHECK(R.sectional(VectorXd::Unit(4, 0), VectorXd::Unit(4, 1)) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(R.sectional(VectorXd::Unit(4, 0), VectorXd::Unit(4, 2))) < 1e-8);
  // Ricci = g on the sphere factor
  CHECK(R.ricci()(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(R.ricci()(1, 1) == doctest::Approx(std::sin(0.9) * std::sin(0.9)).epsilon(1e-6));
  CHECK(R.symmetry_defect() < 1e-8);
  CHECK(R.bianchi_defect() < 1e-8);
  CHECK(holonomy_span_rank(R) == 1);
}

TEST_CASE("flat ansatz metrics") {
  const VField C = constant_example(Mat3(Eigen::Vector3d(1, 2, 3).asDiagonal()));
  const CurvatureData R = riemann(ansatz_sampler(C, ConnectionPotential{}), point7(Vec4(0.1, 0.2, 0.3, 0.4)));
  CHECK(R.norm() < 1e-6);
  CHECK(holonomy_span_rank(R) == 0);
  const auto at = make_g2_point(build_structure(C, ConnectionPotential{}, Vec4(0.1, 0.2, 0.3, 0.4)).phi);
  CHECK(curvature_in_g2(R, at));
}

TEST_CASE("mu-dep curvature") {
  const VField V = mu_dep_example();
  const ConnectionPotential A = mu_dep_potential();
  const auto s = ansatz_sampler(V, A);
  for (const Vec4& x : {Vec4(0, 0, 0, 1), Vec4(0.3, -0.4, 0.2, 1.3), Vec4(-0.7, 0.1, 0.5, 0.8)}) {
    const CurvatureData R = riemann(s, point7(x));
    CHECK(R.norm() > 1e-2);
    CHECK(R.ricci().cwiseAbs().maxCoeff() < 1e-5 * R.norm());
    CHECK(R.symmetry_defect() < 1e-6 * R.norm());
    CHECK(R.bianchi_defect() < 1e-6 * R.norm());
    const auto spec = holonomy_spectrum(R);
    CHECK(spec.rank == 14);
    CHECK(spec.singular_values[14] < 1e-7 * spec.singular_values[0]);
    const auto at = make_g2_point(build_structure(V, A, x).phi);
    CHECK(curvature_in_g2(R, at, 1e-5));
  }
  // translating the sample point in t and nu leaves the rank unchanged
  VectorXd p = point7(Vec4(0.3, -0.4, 0.2, 1.3));
  const int r0 = holonomy_span_rank(riemann(s, p));
  p.head<6>().array() += 0.25;
  CHECK(holonomy_span_rank(riemann(s, p)) == r0);
}

TEST_CASE("poly-ex curvature") {
  const VField V = poly_ex_example();
  const ConnectionPotential A = potential_for(V);
  const Vec4 x(0.3, 0.05, -0.1, 1.2);
  const CurvatureData R = riemann(ansatz_sampler(V, A), point7(x));
  CHECK(R.ricci().cwiseAbs().maxCoeff() < 1e-5 * R.norm());
  CHECK(holonomy_span_rank(R) == 14);
  CHECK(curvature_in_g2(R, make_g2_point(build_structure(V, A, x).phi), 1e-5));
}

TEST_CASE("perturbed non-solution leaves g2") {
  PolyMatrix P = mu_dep_example().poly();
  P(0, 0) = P(0, 0) + 0.1 * Poly4::variable(0);
  const VField V = VField::from_polynomial(P, mu_dep_example().domain());
  const ConnectionPotential A = mu_dep_potential();
  const Vec4 x(0.3, -0.4, 0.2, 1.3);
  const CurvatureData R = riemann(ansatz_sampler(V, A), point7(x));
  const auto at = make_g2_point(build_structure(V, A, x).phi);
  CHECK_FALSE(curvature_in_g2(R, at, 1e-5));
  CHECK(curvature_g2_defect(R, at) > 1e-3);

  // a phi from another point is rejected
  const auto other = make_g2_point(build_structure(V, A, Vec4(0, 0, 0, 1.9)).phi);
  CHECK_THROWS_AS(curvature_in_g2(R, other), std::invalid_argument);
}
