#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "toricg2/ansatz.hpp"

namespace toricg2 {

// V from a symmetric potential A via the second-order curl-curl type operator in nu;
// the result is divergence-free identically.
PolyMatrix potential_to_V(const PolyMatrix& A);

// Canonical kernel basis of a linear operator on polynomials in the flagged variables of
// total degree <= degree. Basis elements are reduced (leading monomial highest in grlex
// order, coefficient of other leading monomials zero) and rescaled to small integers when
// the coefficients are rational with small denominators.
std::vector<Poly4> polynomial_kernel(const std::function<Poly4(const Poly4&)>& op, const std::array<bool, 4>& vars,
                                     int degree);

// Least-squares residual of p against span(basis), relative to max |coefficient of p|.
double span_residual(const std::vector<Poly4>& basis, const Poly4& p);

struct HierarchyFamily {
  Poly4 v33;
  Poly4 v22;
  std::vector<Poly4> v11_basis;
};

struct HierarchySolution {
  int max_degree = 0;
  std::vector<Poly4> v33_choices;
  std::vector<std::vector<Poly4>> v22_bases;  // one per V33 choice
  std::vector<HierarchyFamily> families;      // one per (V33, V22 basis element)

  std::size_t triple_count() const;
  // All (V11, V22, V33) triples as diagonal matrices.
  std::vector<PolyMatrix> triples() const;
};

// d2V33/dmu2 = 0; d2V22/dmu2 + V33 d2V22/dnu3^2 = 0;
// d2V11/dmu2 + V22 d2V11/dnu2^2 + V33 d2V11/dnu3^2 = 0.
// Stage 1 solutions span {1, mu}; stage 2 and 3 are solved with the lower stages fixed.
HierarchySolution hierarchy_solve(int max_degree, std::vector<Poly4> v33_choices = {});

std::vector<Poly4> hierarchy_stage2(const Poly4& v33, int degree);
std::vector<Poly4> hierarchy_stage3(const Poly4& v22, const Poly4& v33, int degree);

// Standard harmonic basis Re/Im (nu3 + i mu)^n in (nu3, mu).
std::vector<Poly4> harmonic_basis_2d(int degree);

VField linear_in_mu(const Mat3& V0, const Mat3& V1, const Box& domain);

// Open mu-interval where V0 + mu V1 is positive definite (V0 > 0 required).
std::pair<double, double> linear_in_mu_positivity(const Mat3& V0, const Mat3& V1);

struct OrthogonalReport {
  enum class Case { hierarchy, casei, none };
  double diagonal_divergence = 0.0;  // max |dV_ii/dnu_i|
  double second_order = 0.0;         // max |d2V_ii/dmu2 + V_jj d2V_ii/dnu_j^2 + V_kk d2V_ii/dnu_k^2|
  double first_order = 0.0;          // max |dV_ii/dnu_j dV_jj/dnu_i|, i != j
  Case kind = Case::none;
  std::array<int, 3> relabeling{0, 1, 2};  // new index i is old index relabeling[i]

  bool residuals_within(double tol) const {
    return diagonal_divergence <= tol && second_order <= tol && first_order <= tol;
  }
};

const char* case_name(OrthogonalReport::Case c);

OrthogonalReport orthogonal_ansatz_check(const VField& V, const Box& box, int res, double tol = 1e-9);

// Worked solutions.
// Default boxes are named functions: GCC 11 merges brace-initialised default arguments of
// the same type across declarations.
Box mu_dep_box();
Box poly_ex_box();
Box constant_box();
VField mu_dep_example(const Box& domain);
VField mu_dep_example();
ConnectionPotential mu_dep_potential();  // A_i = nu_j dnu_k
VField poly_ex_example(const Box& domain);
VField poly_ex_example();
VField constant_example(const Mat3& V0, const Box& domain);
VField constant_example(const Mat3& V0 = Mat3::Identity());

}  // namespace toricg2
