#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "toricg2/ansatz.hpp"
#include "toricg2/g2.hpp"

namespace toricg2 {

struct MetricSampler {
  int dim = 0;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> eval;
};

// g on T^3 x U at (t1, t2, t3, nu1, nu2, nu3, mu); independent of t.
MetricSampler ansatz_sampler(const VField& V, const ConnectionPotential& A);

// Value, first and second partials of g by central differences with one Richardson step.
struct MetricJet {
  Eigen::MatrixXd g;
  Eigen::MatrixXd ginv;
  std::vector<Eigen::MatrixXd> d1;  // d1[c] = dg/dx_c
  std::vector<Eigen::MatrixXd> d2;  // d2[c * dim + d]
};
MetricJet metric_jet(const MetricSampler& s, const Eigen::VectorXd& x, double h = 1e-4);

// gamma[k](i, j) = Gamma^k_ij.
std::vector<Eigen::MatrixXd> christoffel(const MetricSampler& s, const Eigen::VectorXd& x, double h = 1e-4);

// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z, R_abcd = g(R(e_c, e_d) e_b, e_a).
class CurvatureData {
 public:
  CurvatureData(Eigen::MatrixXd g, std::vector<double> upper);

  int dim() const { return n_; }
  const Eigen::MatrixXd& metric() const { return g_; }
  // R^a_bcd
  double up(int a, int b, int c, int d) const { return up_[idx(a, b, c, d)]; }
  // R_abcd
  double riemann(int a, int b, int c, int d) const { return low_[idx(a, b, c, d)]; }
  const Eigen::MatrixXd& ricci() const { return ricci_; }
  // Omega_cd for c < d in lexicographic order, as endomorphisms (a, b) -> R^a_bcd.
  const std::vector<Eigen::MatrixXd>& omega() const { return omega_; }

  double norm() const;               // max |R_abcd|
  double symmetry_defect() const;    // max over the pair symmetries
  double bianchi_defect() const;     // max |R_abcd + R_acdb + R_adbc|
  double sectional(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const;

 private:
  std::size_t idx(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d);
  }
  int n_;
  Eigen::MatrixXd g_;
  std::vector<double> up_, low_;
  Eigen::MatrixXd ricci_;
  std::vector<Eigen::MatrixXd> omega_;
};

CurvatureData riemann(const MetricSampler& s, const Eigen::VectorXd& x, double h = 1e-4);

// Omega_cd in a g-orthonormal frame F = L^{-t}, g = L L^t, re-indexed by frame bivectors.
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g);
std::vector<Eigen::MatrixXd> orthonormal_omega(const CurvatureData& data);

struct HolonomySpectrum {
  int rank = 0;
  std::vector<double> singular_values;  // descending
};

// Numerical rank of span{Omega_cd}: singular values above tol * largest, or 0 when the
// largest is below `floor`.
HolonomySpectrum holonomy_spectrum(const CurvatureData& data, double tol = 1e-6, double floor = 1e-8);
int holonomy_span_rank(const CurvatureData& data, double tol = 1e-6);

// Max over Omega_cd of |Omega . phi| / |Omega| in the orthonormal frame; throws if `at`
// was built for a different metric.
double curvature_g2_defect(const CurvatureData& data, const G2Point& at);
bool curvature_in_g2(const CurvatureData& data, const G2Point& at, double tol = 1e-5);

}  // namespace toricg2
