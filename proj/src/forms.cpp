#include "toricg2/forms.hpp"

#include <array>

namespace toricg2 {

namespace detail {

const SubsetTable& subset_table(int dim, int degree) {
  static const auto tables = [] {
    std::array<std::array<SubsetTable, kMaxFormDim + 1>, kMaxFormDim + 1> t;
    for (int n = 1; n <= kMaxFormDim; ++n) {
      for (int k = 0; k <= n; ++k) {
        auto& tab = t[n][k];
        tab.pos.assign(1u << n, -1);
        for (unsigned m = 0; m < (1u << n); ++m) {
          if (std::popcount(m) != k) continue;
          tab.pos[m] = static_cast<int>(tab.masks.size());
          tab.masks.push_back(m);
        }
      }
    }
    return t;
  }();
  return tables[dim][degree];
}

}  // namespace detail

namespace {

std::vector<int> indices_of(unsigned m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

// det of the submatrix with the given rows and columns
double minor_det(const Eigen::MatrixXd& M, const std::vector<int>& rows, const std::vector<int>& cols) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = M(rows[i], cols[j]);
  return sub.determinant();
}

}  // namespace

KForm<double> pullback(const KForm<double>& a, const Eigen::MatrixXd& F) {
  if (F.rows() != a.dim() || F.cols() != a.dim()) throw std::invalid_argument("pullback: shape mismatch");
  KForm<double> r(a.dim(), a.degree());
  if (a.degree() == 0) {
    r.at(0) = a.at(0);
    return r;
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::vector<Eigen::VectorXd> vs;
    for (int c : indices_of(r.mask_at(i))) vs.emplace_back(F.col(c));
    r.at(i) = evaluate(a, vs);
  }
  return r;
}

KForm<double> derivation(const Eigen::MatrixXd& A, const KForm<double>& a) {
  KForm<double> r(a.dim(), a.degree());
  if (a.degree() == 0) return r;
  for (int i = 0; i < a.dim(); ++i) {
    const Eigen::VectorXd col = A.col(i);
    r += wedge(KForm<double>::basis(a.dim(), {i}), contract(col, a));
  }
  return r;
}

double max_abs(const KForm<double>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.at(i)));
  return m;
}

KForm<double> volume_form(int dim, double scale) {
  KForm<double> v(dim, dim);
  v.at(0) = scale;
  return v;
}

double form_inner(const KForm<double>& a, const KForm<double>& b, const Eigen::MatrixXd& g) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw std::invalid_argument("form_inner: shape mismatch");
  const Eigen::MatrixXd ginv = g.inverse();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i) == 0.0) continue;
    const auto I = indices_of(a.mask_at(i));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b.at(j) == 0.0) continue;
      acc += a.at(i) * b.at(j) * minor_det(ginv, I, indices_of(b.mask_at(j)));
    }
  }
  return acc;
}

KForm<double> hodge(const KForm<double>& a, const Eigen::MatrixXd& g, const KForm<double>& vol) {
  const int n = a.dim();
  if (g.rows() != n || g.cols() != n || vol.dim() != n || vol.degree() != n)
    throw std::invalid_argument("hodge: shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("hodge: degenerate metric");
  const Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  KForm<double> r(n, n - a.degree());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto I = indices_of(a.mask_at(i));
    double sharp = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.at(j) != 0.0) sharp += minor_det(ginv, I, indices_of(a.mask_at(j))) * a.at(j);
    if (sharp == 0.0) continue;
    KForm<double> t = vol;
    for (int idx : I) t = contract_basis(idx, t);
    r += sharp * t;
  }
  return r;
}

FormMetric metric_from_three_form(const KForm<double>& phi) {
  if (phi.dim() != 7 || phi.degree() != 3) throw std::invalid_argument("metric_from_three_form: need a 3-form in dim 7");
  std::array<KForm<double>, 7> c;
  for (int i = 0; i < 7; ++i) c[static_cast<std::size_t>(i)] = contract_basis(i, phi);
  Eigen::MatrixXd b(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      const double v = wedge(wedge(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]), phi).top();
      b(i, j) = v;
      b(j, i) = v;
    }
  const int s = b.trace() >= 0.0 ? 1 : -1;
  const Eigen::MatrixXd sb = s * b;
  Eigen::LLT<Eigen::MatrixXd> llt(sb);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("metric_from_three_form: not a G2 3-form");
  const double lambda = std::pow(std::abs(b.determinant()) / std::pow(6.0, 7), 1.0 / 9.0);
  FormMetric out;
  out.g = sb / (6.0 * lambda);
  out.vol = volume_form(7, s * lambda);
  out.orientation = s;
  return out;
}

namespace {

KForm<Poly1> d_basis_one_form(int i) {
  KForm<Poly1> r(7, 2);
  if (i == 0) return r;
  const int base = i <= 3 ? 1 : 4;
  const int l = i - base;
  const int j = base + (l + 1) % 3;
  const int k = base + (l + 2) % 3;
  return KForm<Poly1>::basis(7, {j, k}, Poly1(2.0));
}

}  // namespace

KForm<Poly1> coframe_d(const KForm<Poly1>& a) {
  if (a.dim() != 7) throw std::invalid_argument("coframe_d: unsupported frame");
  if (a.degree() == 7) return KForm<Poly1>(7, 0);
  KForm<Poly1> r(7, a.degree() + 1);
  const auto dr = KForm<Poly1>::basis(7, {0});
  for (std::size_t n = 0; n < a.size(); ++n) {
    const Poly1& c = a.at(n);
    if (c.is_zero()) continue;
    const auto idx = indices_of(a.mask_at(n));
    KForm<Poly1> mono(7, a.degree());
    mono.at(n) = Poly1(1.0);
    r += wedge(KForm<Poly1>::scalar(7, c.derivative(0)), wedge(dr, mono));
    for (std::size_t m = 0; m < idx.size(); ++m) {
      KForm<Poly1> term = KForm<Poly1>::scalar(7, Poly1((m % 2) ? -1.0 : 1.0));
      for (std::size_t q = 0; q < idx.size(); ++q)
        term = wedge(term, q == m ? d_basis_one_form(idx[q]) : KForm<Poly1>::basis(7, {idx[q]}));
      r += c * term;
    }
  }
  return r;
}

KForm<double> at_radius(const KForm<Poly1>& a, double r) {
  const std::array<double, 1> x{r};
  return a.map([&](const Poly1& p) { return p(x); });
}

}  // namespace toricg2
