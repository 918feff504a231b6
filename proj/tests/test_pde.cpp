#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "toricg2/pde.hpp"

using namespace toricg2;

namespace {

const Poly4 n1 = Poly4::variable(0), n2 = Poly4::variable(1), n3 = Poly4::variable(2), mu = Poly4::variable(kMu);

Poly4 random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> u(-5, 5);
  Poly4 p;
  for (const auto& e : monomials_up_to<4>(degree, {true, true, true, true})) p += Poly4::monomial(e, u(rng));
  return p;
}

bool contains(const std::vector<Poly4>& basis, const Poly4& p) {
  for (const auto& b : basis)
    if (b == p || b == -1.0 * p) return true;
  return false;
}

}  // namespace

TEST_CASE("potential_to_V") {
  CHECK(potential_to_V(PolyMatrix{}) == PolyMatrix{});
  const PolyMatrix V = potential_to_V(PolyMatrix::diagonal(Poly4(), 0.5 * n3 * n3, 0.5 * n2 * n2));
  CHECK(V == PolyMatrix::diagonal(Poly4(2.0), Poly4(), Poly4()));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    PolyMatrix A;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) A(i, j) = random_poly(rng, 3);
    const PolyMatrix W = potential_to_V(A);
    CHECK(W.degree() >= 0);
    for (int c = 0; c < 3; ++c) {
      Poly4 div;
      for (int i = 0; i < 3; ++i) div += W(i, c).derivative(i);
      CHECK(div.is_zero());
    }
  }
  // mu rides along
  const PolyMatrix M = potential_to_V(PolyMatrix::diagonal(Poly4(), 0.5 * mu * n3 * n3, Poly4()));
  CHECK(M(0, 0) == mu);
}

TEST_CASE("polynomial kernel") {
  // Laplacian in (nu3, mu) against the standard harmonic basis
  for (int d = 1; d <= 6; ++d) {
    const auto k = hierarchy_stage2(Poly4(1.0), d);
    const auto h = harmonic_basis_2d(d);
    CHECK(k.size() == h.size());
    CHECK(k.size() == static_cast<std::size_t>(2 * d + 1));
    for (const auto& p : h) CHECK(span_residual(k, p) < 1e-12);
    for (const auto& p : k) CHECK(span_residual(h, p) < 1e-12);
  }
  // basis coefficients are small integers
  for (const auto& p : hierarchy_stage2(Poly4(1.0), 4))
    for (const auto& [e, c] : p.terms()) CHECK(c == std::round(c));
  CHECK(span_residual({n3}, mu) == doctest::Approx(1.0));
  CHECK(span_residual({}, Poly4()) == 0.0);
}

TEST_CASE("hierarchy stages") {
  const auto v22 = hierarchy_stage2(mu, 3);
  CHECK(contains(v22, mu * mu * mu - 3.0 * n3 * n3));
  const Poly4 poly_v22 = mu * mu * mu - 3.0 * n3 * n3;
  const Poly4 poly_v11 = 2.0 * mu * mu * mu * mu * mu - 15.0 * mu * mu * n3 * n3 - 5.0 * n2 * n2;
  CHECK(span_residual(hierarchy_stage2(mu, 5), poly_v22) < 1e-12);
  CHECK(span_residual(hierarchy_stage3(poly_v22, mu, 5), poly_v11) < 1e-12);
  CHECK(span_residual(hierarchy_stage3(poly_v22, mu, 4), poly_v11) > 1e-3);
}

TEST_CASE("hierarchy_solve") {
  CHECK_THROWS_AS(hierarchy_solve(0), std::invalid_argument);
  CHECK_THROWS_AS(hierarchy_solve(2, {mu * mu}), std::invalid_argument);

  const HierarchySolution sol = hierarchy_solve(5);
  REQUIRE(sol.v33_choices.size() == 2);
  CHECK(sol.triple_count() > 0);
  CHECK(sol.triples().size() == sol.triple_count());
  CHECK(contains(sol.v22_bases[1], mu * mu * mu - 3.0 * n3 * n3));

  const Box box{Vec4(-0.5, -0.5, -0.5, 0.5), Vec4(0.5, 0.5, 0.5, 1.5)};
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& T : sol.triples()) {
    CHECK(T.is_diagonal());
    CHECK(T.degree() <= 5);
    const VField V = VField::from_polynomial(T, box);
    for (const auto& x : box.grid(5)) {
      // scale by the size of the coefficients, which grow with the degree
      double scale = 1.0;
      for (int i = 0; i < 3; ++i) scale = std::max(scale, T(i, i).max_abs_coeff());
      worst = std::max(worst, div_residual(V, x).norm() / scale);
      worst = std::max(worst, elliptic_residual(V, x).norm() / (scale * scale));
    }
    ++checked;
  }
  CHECK(checked == sol.triple_count());
  CHECK(worst < 1e-10);
}

TEST_CASE("hierarchy solutions are torsion-free") {
  // Constants lie in every kernel, so shifting V22 keeps it a stage-2 solution; stage 3 is
  // re-solved for the shifted V22 and its top basis element shifted to make V positive.
  const Box box{Vec4(-0.2, -0.2, -0.2, 1.0), Vec4(0.2, 0.2, 0.2, 1.2)};
  auto shift_positive = [&](const Poly4& p) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& x : box.grid(4)) lo = std::min(lo, p(x));
    return p + (1.0 - lo);
  };
  int tested = 0;
  for (const auto& v22_raw : hierarchy_stage2(mu, 3)) {
    const Poly4 v22 = shift_positive(v22_raw);
    const auto v11s = hierarchy_stage3(v22, mu, 3);
    REQUIRE(!v11s.empty());
    const Poly4 v11 = shift_positive(v11s.back());
    const VField V = VField::from_polynomial(PolyMatrix::diagonal(v11, v22, mu), box);
    REQUIRE(min_leading_minor(V, box, 3) > 0.0);
    const auto r = torsion_residual(V, potential_for(V), box, 3);
    CHECK(r.dphi < 1e-8);
    CHECK(r.dstar_phi < 1e-8);
    ++tested;
  }
  CHECK(tested == 5);  // 1, nu3, mu, nu3 mu, mu^3 - 3 nu3^2
}

TEST_CASE("linear in mu") {
  const Box box{Vec4(-1, -1, -1, 0.5), Vec4(1, 1, 1, 2)};
  const VField V = linear_in_mu(Mat3::Zero(), Mat3::Identity(), box);
  CHECK(V.poly() == mu_dep_example().poly());
  const VField C = linear_in_mu(2.0 * Mat3::Identity(), Mat3::Zero(), box);
  CHECK(C.poly().degree() == 0);
  for (const auto& x : box.grid(3)) {
    CHECK(elliptic_residual(V, x).norm() == 0.0);
    CHECK(div_residual(C, x).norm() == 0.0);
    CHECK(Z_of(C, x).norm() == 0.0);
    CHECK(W_of(C, x).norm() == 0.0);
  }
  std::mt19937_64 rng(37);
  std::normal_distribution<double> n;
  Mat3 V0, V1;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      V0(i, j) = V0(j, i) = n(rng);
      V1(i, j) = V1(j, i) = n(rng);
    }
  V0 = V0 * V0.transpose() + Mat3::Identity();
  const VField R = linear_in_mu(V0, V1, box);
  for (const auto& x : box.grid(3)) {
    CHECK(elliptic_residual(R, x).norm() < 1e-13);
    CHECK(div_residual(R, x).norm() == 0.0);
  }

  const auto [lo, hi] = linear_in_mu_positivity(Mat3::Identity(), Eigen::Vector3d(2.0, 0.5, -0.25).asDiagonal());
  CHECK(lo == doctest::Approx(-0.5));
  CHECK(hi == doctest::Approx(4.0));
  const auto [lo2, hi2] = linear_in_mu_positivity(Mat3::Identity(), Mat3::Zero());
  CHECK(std::isinf(lo2));
  CHECK(std::isinf(hi2));
  CHECK_THROWS_AS(linear_in_mu_positivity(-Mat3::Identity(), Mat3::Identity()), std::invalid_argument);

  // generic V0: the interval edges are where det(V0 + mu V1) vanishes
  const auto [a, b] = linear_in_mu_positivity(V0, V1);
  for (double m : {a, b}) {
    if (std::isinf(m)) continue;
    CHECK(std::abs((V0 + m * V1).determinant()) < 1e-9 * V0.determinant());
  }
  const double inside = std::isinf(a) ? (std::isinf(b) ? 0.0 : b - 1.0) : (std::isinf(b) ? a + 1.0 : 0.5 * (a + b));
  CHECK(positive_definite(V0 + inside * V1));
}

TEST_CASE("orthogonal ansatz check") {
  const VField poly = poly_ex_example();
  const auto r = orthogonal_ansatz_check(poly, poly.domain(), 5);
  CHECK(r.kind == OrthogonalReport::Case::hierarchy);
  CHECK(r.residuals_within(1e-9));
  CHECK(r.relabeling == std::array<int, 3>{0, 1, 2});

  // the same field with indices permuted is still recognised
  const PolyMatrix& P = poly.poly();
  const Box b = poly.domain();
  auto perm_box = [](const Box& in, const std::array<int, 3>& p) {
    Box out = in;
    for (int i = 0; i < 3; ++i) {
      out.lo(p[static_cast<std::size_t>(i)]) = in.lo(i);
      out.hi(p[static_cast<std::size_t>(i)]) = in.hi(i);
    }
    return out;
  };
  // swap nu1 <-> nu3 and entries 11 <-> 33
  std::array<Poly4, 4> swap13{n3, n2, n1, mu};
  const PolyMatrix Q = PolyMatrix::diagonal(P(2, 2).compose<4>(swap13), P(1, 1).compose<4>(swap13), P(0, 0).compose<4>(swap13));
  const Box qb = perm_box(b, {2, 1, 0});
  const auto rq = orthogonal_ansatz_check(VField::from_polynomial(Q, qb), qb, 5);
  CHECK(rq.kind == OrthogonalReport::Case::hierarchy);
  CHECK(rq.relabeling == std::array<int, 3>{2, 1, 0});

  const PolyMatrix ci = PolyMatrix::diagonal(2.0 + 0.5 * mu + 0.3 * n2, 2.0 + mu - 0.2 * n3, 1.5 + 0.2 * mu + 0.3 * n1);
  const Box box{Vec4(-1, -1, -1, 0), Vec4(1, 1, 1, 1)};
  const auto rc = orthogonal_ansatz_check(VField::from_polynomial(ci, box), box, 4);
  CHECK(rc.kind == OrthogonalReport::Case::casei);
  CHECK(rc.residuals_within(1e-12));
  CHECK(std::string(case_name(rc.kind)) == "casei");

  PolyMatrix bad = PolyMatrix::constant(Mat3::Identity());
  bad(0, 0) = n1;
  const auto rb = orthogonal_ansatz_check(VField::from_polynomial(bad, box), box, 3);
  CHECK(rb.diagonal_divergence == doctest::Approx(1.0));
  CHECK(rb.kind == OrthogonalReport::Case::none);

  PolyMatrix off = PolyMatrix::constant(Mat3::Identity());
  off(0, 1) = Poly4(0.1);
  CHECK_THROWS_AS(orthogonal_ansatz_check(VField::from_polynomial(off, box), box, 3), std::invalid_argument);
}
