#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace toricg2 {

// Sparse real polynomial in N variables, terms keyed by exponent tuple.
template <int N>
class Polynomial {
 public:
  using Exponent = std::array<int, N>;
  using Terms = std::map<Exponent, double>;

  Polynomial() = default;
  Polynomial(double c) {  // NOLINT: implicit constant promotion is intended
    if (c != 0.0) terms_[Exponent{}] = c;
  }

  static Polynomial variable(int i) {
    Exponent e{};
    e.at(static_cast<std::size_t>(i)) = 1;
    return monomial(e, 1.0);
  }
  static Polynomial monomial(const Exponent& e, double c) {
    Polynomial p;
    if (c != 0.0) p.terms_[e] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  static int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial derivative(int var) const {
    const auto v = static_cast<std::size_t>(var);
    Polynomial r;
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exponent f = e;
      f[v] -= 1;
      r.add_term(f, c * e[v]);
    }
    return r;
  }

  Polynomial homogeneous_part(int d) const {
    Polynomial r;
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) r.terms_[e] = c;
    return r;
  }

  // Drops terms with |c| <= tol.
  Polynomial pruned(double tol) const {
    Polynomial r;
    for (const auto& [e, c] : terms_)
      if (std::abs(c) > tol) r.terms_[e] = c;
    return r;
  }

  // Evaluation for any scalar type supporting +, * and construction from double.
  template <class T, class Vec>
  T eval(const Vec& x) const {
    int maxdeg = 0;
    for (const auto& [e, c] : terms_)
      for (int k : e) maxdeg = std::max(maxdeg, k);
    std::array<std::vector<T>, N> pw;
    for (std::size_t i = 0; i < N; ++i) {
      pw[i].reserve(static_cast<std::size_t>(maxdeg) + 1);
      pw[i].push_back(T(1.0));
      for (int k = 1; k <= maxdeg; ++k) pw[i].push_back(pw[i].back() * x[static_cast<int>(i)]);
    }
    T acc(0.0);
    for (const auto& [e, c] : terms_) {
      T m(c);
      for (std::size_t i = 0; i < N; ++i)
        if (e[i] > 0) m = m * pw[i][static_cast<std::size_t>(e[i])];
      acc = acc + m;
    }
    return acc;
  }

  template <class Vec>
  double operator()(const Vec& x) const {
    return eval<double>(x);
  }

  // p(s_1(y), ..., s_N(y)) for substitution polynomials s_i in M variables.
  template <int M>
  Polynomial<M> compose(const std::array<Polynomial<M>, N>& subs) const {
    int maxdeg = 0;
    for (const auto& [e, c] : terms_)
      for (int k : e) maxdeg = std::max(maxdeg, k);
    std::array<std::vector<Polynomial<M>>, N> pw;
    for (std::size_t i = 0; i < N; ++i) {
      pw[i].push_back(Polynomial<M>(1.0));
      for (int k = 1; k <= maxdeg; ++k) pw[i].push_back(pw[i].back() * subs[i]);
    }
    Polynomial<M> r;
    for (const auto& [e, c] : terms_) {
      Polynomial<M> m(c);
      for (std::size_t i = 0; i < N; ++i)
        if (e[i] > 0) m = m * pw[i][static_cast<std::size_t>(e[i])];
      r += m;
    }
    return r;
  }

  // p(x + s).
  Polynomial shifted(const std::array<double, N>& s) const {
    std::array<Polynomial, N> subs;
    for (std::size_t i = 0; i < N; ++i) subs[i] = variable(static_cast<int>(i)) + Polynomial(s[i]);
    return compose<N>(subs);
  }

 private:
  void add_term(const Exponent& e, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  Terms terms_;
};

using Poly4 = Polynomial<4>;
using Poly1 = Polynomial<1>;

// Graded lexicographic order: total degree first, then exponents left to right.
template <int N>
bool grlex_less(const typename Polynomial<N>::Exponent& a, const typename Polynomial<N>::Exponent& b) {
  const int da = Polynomial<N>::total_degree(a);
  const int db = Polynomial<N>::total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

// All exponents of total degree <= d in the variables flagged by `use`, grlex ascending.
template <int N>
std::vector<typename Polynomial<N>::Exponent> monomials_up_to(int d, const std::array<bool, N>& use) {
  using E = typename Polynomial<N>::Exponent;
  std::vector<E> out;
  E e{};
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == N) {
      out.push_back(e);
      return;
    }
    const int hi = use[i] ? left : 0;
    for (int k = 0; k <= hi; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const E& a, const E& b) { return grlex_less<N>(a, b); });
  return out;
}

}  // namespace toricg2
