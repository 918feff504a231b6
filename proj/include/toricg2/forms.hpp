#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toricg2/polynomial.hpp"

namespace toricg2 {

constexpr int kMaxFormDim = 8;

namespace detail {

struct SubsetTable {
  std::vector<unsigned> masks;  // increasing order
  std::vector<int> pos;         // mask -> index into masks, -1 otherwise
};

const SubsetTable& subset_table(int dim, int degree);

// Sign of e^A ^ e^B relative to e^{A|B}; zero when A, B overlap.
inline int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int swaps = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    const unsigned low = bb & (~bb + 1);
    swaps += std::popcount(a & ~((low << 1) - 1));
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace detail

// Bitmask of a set of 0-based frame indices.
inline unsigned mask_of(std::initializer_list<int> idx) {
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

template <class S>
class KForm {
 public:
  using Scalar = S;

  KForm() : KForm(1, 0) {}
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1 || dim > kMaxFormDim) throw std::invalid_argument("KForm: dimension out of range");
    if (degree < 0 || degree > dim) throw std::invalid_argument("KForm: degree out of range");
    coeffs_.assign(table().masks.size(), S(0.0));
  }

  // c * e^{i_1} ^ ... ^ e^{i_k}, indices 0-based in any order.
  static KForm basis(int dim, std::initializer_list<int> idx, const S& c = S(1.0)) {
    KForm f(dim, static_cast<int>(idx.size()));
    unsigned m = 0;
    int sign = 1;
    for (int i : idx) {
      if (i < 0 || i >= dim) throw std::invalid_argument("KForm: index out of range");
      const int s = detail::wedge_sign(m, 1u << i);
      if (s == 0) return f;
      sign *= s;
      m |= 1u << i;
    }
    f[m] = sign > 0 ? c : S(-c);
    return f;
  }

  static KForm scalar(int dim, const S& c) {
    KForm f(dim, 0);
    f.coeffs_[0] = c;
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<unsigned>& masks() const { return table().masks; }
  unsigned mask_at(std::size_t i) const { return table().masks[i]; }
  const S& at(std::size_t i) const { return coeffs_[i]; }
  S& at(std::size_t i) { return coeffs_[i]; }

  S& operator[](unsigned mask) { return coeffs_[index(mask)]; }
  const S& operator[](unsigned mask) const { return coeffs_[index(mask)]; }
  S get(std::initializer_list<int> idx) const { return KForm::basis(dim_, idx, S(1.0)).pair_with(*this); }

  KForm& operator+=(const KForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend KForm operator*(const S& s, KForm a) {
    for (auto& c : a.coeffs_) c = s * c;
    return a;
  }

  template <class F>
  auto map(F&& f) const {
    using R = decltype(f(coeffs_[0]));
    KForm<R> r(dim_, degree_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.at(i) = f(coeffs_[i]);
    return r;
  }

  // Coefficient-wise sum of products with a same-shape form (the e^I basis is orthonormal).
  S pair_with(const KForm& o) const {
    check_same(o);
    S acc(0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) acc = acc + coeffs_[i] * o.coeffs_[i];
    return acc;
  }

  S top() const {
    if (degree_ != dim_) throw std::invalid_argument("KForm::top: not a top-degree form");
    return coeffs_[0];
  }

 private:
  const detail::SubsetTable& table() const { return detail::subset_table(dim_, degree_); }
  std::size_t index(unsigned mask) const {
    const auto& t = table();
    if (mask >= t.pos.size() || t.pos[mask] < 0) throw std::out_of_range("KForm: mask not of this degree");
    return static_cast<std::size_t>(t.pos[mask]);
  }
  void check_same(const KForm& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw std::invalid_argument("KForm: shape mismatch");
  }

  int dim_;
  int degree_;
  std::vector<S> coeffs_;
};

template <class S>
KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  const int deg = a.degree() + b.degree();
  if (deg > a.dim()) return KForm<S>(a.dim(), 0);
  KForm<S> r(a.dim(), deg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const unsigned ma = a.mask_at(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const unsigned mb = b.mask_at(j);
      const int s = detail::wedge_sign(ma, mb);
      if (s == 0) continue;
      S& dst = r[ma | mb];
      const S prod = a.at(i) * b.at(j);
      dst = s > 0 ? S(dst + prod) : S(dst - prod);
    }
  }
  return r;
}

// Interior product X _| a, for any indexable vector X.
template <class S, class Vec>
KForm<S> contract(const Vec& X, const KForm<S>& a) {
  if (a.degree() < 1) throw std::invalid_argument("contract: degree-0 form");
  KForm<S> r(a.dim(), a.degree() - 1);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const unsigned m = a.mask_at(j);
    int before = 0;
    for (int i = 0; i < a.dim(); ++i) {
      if (!(m & (1u << i))) continue;
      const S term = S(X[i]) * a.at(j);
      S& dst = r[m & ~(1u << i)];
      dst = (before & 1) ? S(dst - term) : S(dst + term);
      ++before;
    }
  }
  return r;
}

template <class S>
KForm<S> contract_basis(int i, const KForm<S>& a) {
  Eigen::VectorXd e = Eigen::VectorXd::Unit(a.dim(), i);
  return contract(e, a);
}

// a(v_1, ..., v_k).
template <class S, class Vec>
S evaluate(const KForm<S>& a, const std::vector<Vec>& vs) {
  if (static_cast<int>(vs.size()) != a.degree()) throw std::invalid_argument("evaluate: wrong number of vectors");
  KForm<S> cur = a;
  for (const auto& v : vs) cur = contract(v, cur);
  return cur.at(0);
}

// (F^*a)(e_I) = a(F e_{i_1}, ..., F e_{i_k}).
KForm<double> pullback(const KForm<double>& a, const Eigen::MatrixXd& F);

// Derivation action of an endomorphism: sum_i e^i ^ (A E_i) _| a.
KForm<double> derivation(const Eigen::MatrixXd& A, const KForm<double>& a);

double max_abs(const KForm<double>& a);

KForm<double> volume_form(int dim, double scale = 1.0);

// b ^ *a = g(b, a) vol.
KForm<double> hodge(const KForm<double>& a, const Eigen::MatrixXd& g, const KForm<double>& vol);

// Induced inner product on k-forms.
double form_inner(const KForm<double>& a, const KForm<double>& b, const Eigen::MatrixXd& g);

struct FormMetric {
  Eigen::MatrixXd g;
  KForm<double> vol;
  int orientation = 1;  // sign of vol relative to e^{1..7}
};

// Metric and volume of a 3-form on a 7-dimensional frame; throws if phi is not of G2 type.
FormMetric metric_from_three_form(const KForm<double>& phi);

// Exterior derivative over the frame {dr, e1, e2, e3, f1, f2, f3} with coefficients
// polynomial in r: de^i = 2 e^{jk}, df^i = 2 f^{jk}.
KForm<Poly1> coframe_d(const KForm<Poly1>& a);

KForm<double> at_radius(const KForm<Poly1>& a, double r);

// d of a form whose coefficients are forward-mode jets in n coordinates that sit at
// frame slots offset, ..., offset + n - 1.
template <class AD>
auto exterior_derivative(const KForm<AD>& f, int offset) {
  using S = typename AD::DerType::Scalar;
  const int n = static_cast<int>(AD::DerType::RowsAtCompileTime);
  if (f.degree() + 1 > f.dim()) return KForm<S>(f.dim(), 0);
  KForm<S> r(f.dim(), f.degree() + 1);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const unsigned m = f.mask_at(j);
    const auto& der = f.at(j).derivatives();
    for (int a = 0; a < n; ++a) {
      const unsigned ma = 1u << (offset + a);
      const int s = detail::wedge_sign(ma, m);
      if (s == 0) continue;
      S& dst = r[ma | m];
      dst = s > 0 ? S(dst + der[a]) : S(dst - der[a]);
    }
  }
  return r;
}

}  // namespace toricg2
