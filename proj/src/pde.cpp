#include "toricg2/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace toricg2 {

PolyMatrix potential_to_V(const PolyMatrix& A) {
  auto d2 = [&](int r, int c, int a, int b) { return A(r, c).derivative(a).derivative(b); };
  PolyMatrix V;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    V(i, i) = d2(j, j, k, k) + d2(k, k, j, j) - 2.0 * d2(j, k, j, k);
    V(i, j) = d2(i, k, j, k) + d2(j, k, k, i) - d2(i, j, k, k) - d2(k, k, i, j);
  }
  return V;
}

namespace {

using Exponent = Poly4::Exponent;

// Continued-fraction approximation with bounded denominator.
std::optional<std::pair<long long, long long>> rational(double x, long long max_den, double tol) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 1e15) break;
    const auto a = static_cast<long long>(fl);
    const long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return std::make_pair(h1, k1);
    const double frac = r - fl;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

// Scale to coprime integers if the entries are rationals with small denominators.
void normalize_rational(Eigen::VectorXd& v) {
  long long lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0.0) continue;
    const auto q = rational(v(i), 10000, 1e-10 * std::max(1.0, std::abs(v(i))));
    if (!q) return;
    lcm = std::lcm(lcm, q->second);
    if (lcm > 100000000) return;
  }
  Eigen::VectorXd w = v * static_cast<double>(lcm);
  long long g = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double r = std::round(w(i));
    if (std::abs(w(i) - r) > 1e-7 * std::max(1.0, std::abs(w(i)))) return;
    w(i) = r;
    g = std::gcd(g, static_cast<long long>(std::abs(r)));
  }
  if (g > 1) w /= static_cast<double>(g);
  v = w;
}

}  // namespace

std::vector<Poly4> polynomial_kernel(const std::function<Poly4(const Poly4&)>& op, const std::array<bool, 4>& vars,
                                     int degree) {
  const auto cols = monomials_up_to<4>(degree, vars);
  std::map<Exponent, int> row_of;
  std::vector<Poly4> images;
  images.reserve(cols.size());
  for (const auto& e : cols) {
    images.push_back(op(Poly4::monomial(e, 1.0)));
    for (const auto& [re, c] : images.back().terms()) row_of.try_emplace(re, 0);
  }
  int nr = 0;
  for (auto& [e, r] : row_of) r = nr++;
  const auto nc = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(std::max(nr, 1), nc);
  for (Eigen::Index c = 0; c < nc; ++c)
    for (const auto& [re, v] : images[static_cast<std::size_t>(c)].terms()) M(row_of.at(re), c) = v;

  // Gauss-Jordan elimination, columns in ascending grlex order.
  const double tol = 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < nc && row < M.rows(); ++c) {
    Eigen::Index best;
    const double mx = M.col(c).tail(M.rows() - row).cwiseAbs().maxCoeff(&best);
    if (mx <= tol) continue;
    best += row;
    M.row(row).swap(M.row(best));
    M.row(row) /= M(row, c);
    for (Eigen::Index r = 0; r < M.rows(); ++r)
      if (r != row && M(r, c) != 0.0) M.row(r) -= M(r, c) * M.row(row);
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(nc), false);
  for (auto c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Poly4> basis;
  for (Eigen::Index f = 0; f < nc; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(nc);
    v(f) = 1.0;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      const double x = -M(static_cast<Eigen::Index>(r), f);
      v(pivot_cols[r]) = std::abs(x) <= tol ? 0.0 : x;
    }
    normalize_rational(v);
    Poly4 p;
    for (Eigen::Index c = 0; c < nc; ++c)
      if (v(c) != 0.0) p += Poly4::monomial(cols[static_cast<std::size_t>(c)], v(c));
    basis.push_back(std::move(p));
  }
  return basis;
}

double span_residual(const std::vector<Poly4>& basis, const Poly4& p) {
  std::map<Exponent, int> row_of;
  for (const auto& b : basis)
    for (const auto& [e, c] : b.terms()) row_of.try_emplace(e, 0);
  for (const auto& [e, c] : p.terms()) row_of.try_emplace(e, 0);
  int nr = 0;
  for (auto& [e, r] : row_of) r = nr++;
  if (nr == 0) return 0.0;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nr, static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(nr);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (const auto& [e, c] : basis[j].terms()) B(row_of.at(e), static_cast<Eigen::Index>(j)) = c;
  for (const auto& [e, c] : p.terms()) y(row_of.at(e)) = c;
  const double scale = std::max(p.max_abs_coeff(), std::numeric_limits<double>::min());
  if (basis.empty()) return y.cwiseAbs().maxCoeff() / scale;
  const Eigen::VectorXd x = B.completeOrthogonalDecomposition().solve(y);
  return (B * x - y).cwiseAbs().maxCoeff() / scale;
}

std::vector<Poly4> hierarchy_stage2(const Poly4& v33, int degree) {
  auto op = [&](const Poly4& p) { return p.derivative(kMu).derivative(kMu) + v33 * p.derivative(2).derivative(2); };
  return polynomial_kernel(op, {false, false, true, true}, degree);
}

std::vector<Poly4> hierarchy_stage3(const Poly4& v22, const Poly4& v33, int degree) {
  auto op = [&](const Poly4& p) {
    return p.derivative(kMu).derivative(kMu) + v22 * p.derivative(1).derivative(1) + v33 * p.derivative(2).derivative(2);
  };
  return polynomial_kernel(op, {false, true, true, true}, degree);
}

std::size_t HierarchySolution::triple_count() const {
  std::size_t n = 0;
  for (const auto& f : families) n += f.v11_basis.size();
  return n;
}

std::vector<PolyMatrix> HierarchySolution::triples() const {
  std::vector<PolyMatrix> out;
  out.reserve(triple_count());
  for (const auto& f : families)
    for (const auto& v11 : f.v11_basis) out.push_back(PolyMatrix::diagonal(v11, f.v22, f.v33));
  return out;
}

HierarchySolution hierarchy_solve(int max_degree, std::vector<Poly4> v33_choices) {
  if (max_degree < 1) throw std::invalid_argument("hierarchy_solve: max_degree must be >= 1");
  if (v33_choices.empty()) v33_choices = {Poly4(1.0), Poly4::variable(kMu)};
  for (const auto& v : v33_choices)
    if (!v.derivative(kMu).derivative(kMu).is_zero() || v.degree_in(0) > 0 || v.degree_in(1) > 0 || v.degree_in(2) > 0)
      throw std::invalid_argument("hierarchy_solve: V33 must be affine in mu");
  HierarchySolution sol;
  sol.max_degree = max_degree;
  sol.v33_choices = v33_choices;
  for (const auto& v33 : v33_choices) {
    auto v22s = hierarchy_stage2(v33, max_degree);
    for (const auto& v22 : v22s) sol.families.push_back(HierarchyFamily{v33, v22, hierarchy_stage3(v22, v33, max_degree)});
    sol.v22_bases.push_back(std::move(v22s));
  }
  return sol;
}

std::vector<Poly4> harmonic_basis_2d(int degree) {
  std::vector<Poly4> out{Poly4(1.0)};
  Poly4 re(1.0), im;
  const Poly4 x = Poly4::variable(2), y = Poly4::variable(kMu);
  for (int n = 1; n <= degree; ++n) {
    const Poly4 nre = re * x - im * y;
    const Poly4 nim = re * y + im * x;
    re = nre;
    im = nim;
    out.push_back(re);
    out.push_back(im);
  }
  return out;
}

VField linear_in_mu(const Mat3& V0, const Mat3& V1, const Box& domain) {
  PolyMatrix m = PolyMatrix::constant(V0);
  const PolyMatrix lin = PolyMatrix::constant(V1);
  PolyMatrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) out(i, j) = m(i, j) + lin(i, j) * Poly4::variable(kMu);
  return VField::from_polynomial(out, domain);
}

std::pair<double, double> linear_in_mu_positivity(const Mat3& V0, const Mat3& V1) {
  Eigen::LLT<Mat3> llt(V0);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("linear_in_mu_positivity: V0 not positive definite");
  const Mat3 Linv = Mat3(llt.matrixL()).inverse();
  const Mat3 M = Linv * (0.5 * (V1 + V1.transpose())) * Linv.transpose();
  const Eigen::Vector3d lam = Eigen::SelfAdjointEigenSolver<Mat3>(M).eigenvalues();
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (lam(i) > 0.0) lo = std::max(lo, -1.0 / lam(i));
    if (lam(i) < 0.0) hi = std::min(hi, -1.0 / lam(i));
  }
  return {lo, hi};
}

const char* case_name(OrthogonalReport::Case c) {
  switch (c) {
    case OrthogonalReport::Case::hierarchy:
      return "hierarchy";
    case OrthogonalReport::Case::casei:
      return "casei";
    default:
      return "none";
  }
}

OrthogonalReport orthogonal_ansatz_check(const VField& V, const Box& box, int res, double tol) {
  if (V.kind() == VField::Kind::polynomial && !V.poly().is_diagonal())
    throw std::invalid_argument("orthogonal_ansatz_check: V is not diagonal");
  OrthogonalReport rep;
  std::array<std::array<double, 3>, 3> dep{};  // dep[i][a] = max |dV_ii/dnu_a|
  for (const auto& x : box.grid(res)) {
    const VJet j = V.jet(x);
    if (V.kind() == VField::Kind::callable) {
      const Mat3 off = j.value - Mat3(j.value.diagonal().asDiagonal());
      if (off.cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("orthogonal_ansatz_check: V is not diagonal");
    }
    for (int i = 0; i < 3; ++i) {
      const int jj = (i + 1) % 3, kk = (i + 2) % 3;
      const auto ui = static_cast<std::size_t>(i);
      for (std::size_t a = 0; a < 3; ++a) dep[ui][a] = std::max(dep[ui][a], std::abs(j.d1[a](i, i)));
      rep.diagonal_divergence = std::max(rep.diagonal_divergence, std::abs(j.d1[ui](i, i)));
      const double second = j.d2[kMu][kMu](i, i) + j.value(jj, jj) * j.d2[static_cast<std::size_t>(jj)][static_cast<std::size_t>(jj)](i, i) +
                            j.value(kk, kk) * j.d2[static_cast<std::size_t>(kk)][static_cast<std::size_t>(kk)](i, i);
      rep.second_order = std::max(rep.second_order, std::abs(second));
      for (int o = 0; o < 3; ++o) {
        if (o == i) continue;
        const double prod = j.d1[static_cast<std::size_t>(o)](i, i) * j.d1[ui](o, o);
        rep.first_order = std::max(rep.first_order, std::abs(prod));
      }
    }
  }
  if (!rep.residuals_within(tol)) return rep;

  auto depends = [&](const std::array<int, 3>& p, int i, int a) {
    return dep[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])][static_cast<std::size_t>(p[static_cast<std::size_t>(a)])] > tol;
  };
  auto hierarchy = [&](const std::array<int, 3>& p) {
    return !depends(p, 2, 0) && !depends(p, 2, 1) && !depends(p, 2, 2) && !depends(p, 1, 0) && !depends(p, 1, 1) &&
           !depends(p, 0, 0);
  };
  auto casei = [&](const std::array<int, 3>& p) {
    return !depends(p, 0, 0) && !depends(p, 0, 2) && !depends(p, 1, 0) && !depends(p, 1, 1) && !depends(p, 2, 1) &&
           !depends(p, 2, 2);
  };
  std::array<int, 3> p{0, 1, 2};
  do {
    if (hierarchy(p)) {
      rep.kind = OrthogonalReport::Case::hierarchy;
      rep.relabeling = p;
      return rep;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  p = {0, 1, 2};
  do {
    if (casei(p)) {
      rep.kind = OrthogonalReport::Case::casei;
      rep.relabeling = p;
      return rep;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return rep;
}

Box mu_dep_box() { return {Vec4(-1, -1, -1, 0.5), Vec4(1, 1, 1, 2)}; }
Box poly_ex_box() { return {Vec4(-1, -0.2, -0.2, 1.0), Vec4(1, 0.2, 0.2, 1.5)}; }
Box constant_box() { return {Vec4(-1, -1, -1, -1), Vec4(1, 1, 1, 1)}; }

VField mu_dep_example() { return mu_dep_example(mu_dep_box()); }
VField poly_ex_example() { return poly_ex_example(poly_ex_box()); }
VField constant_example(const Mat3& V0) { return constant_example(V0, constant_box()); }

VField mu_dep_example(const Box& domain) {
  const Poly4 mu = Poly4::variable(kMu);
  return VField::from_polynomial(PolyMatrix::diagonal(mu, mu, mu), domain);
}

ConnectionPotential mu_dep_potential() {
  ConnectionPotential A;
  A.a[0][2] = Poly4::variable(1);
  A.a[1][0] = Poly4::variable(2);
  A.a[2][1] = Poly4::variable(0);
  return A;
}

VField poly_ex_example(const Box& domain) {
  const Poly4 n2 = Poly4::variable(1), n3 = Poly4::variable(2), mu = Poly4::variable(kMu);
  const Poly4 mu2 = mu * mu;
  const Poly4 v11 = 2.0 * mu2 * mu2 * mu - 15.0 * mu2 * n3 * n3 - 5.0 * n2 * n2;
  const Poly4 v22 = mu2 * mu - 3.0 * n3 * n3;
  return VField::from_polynomial(PolyMatrix::diagonal(v11, v22, mu), domain);
}

VField constant_example(const Mat3& V0, const Box& domain) {
  return VField::from_polynomial(PolyMatrix::constant(V0), domain);
}

}  // namespace toricg2
