#pragma once

#include <Eigen/Dense>

#include <vector>

#include "toricg2/forms.hpp"

namespace toricg2 {

// e^{123} - e^1(e^{45}+e^{67}) - e^2(e^{46}+e^{75}) - e^3(e^{47}+e^{56}), indices shifted to 0-based.
KForm<double> phi0();
KForm<double> star_phi0();

struct G2Point {
  KForm<double> phi;
  Eigen::MatrixXd g;
  KForm<double> vol;
};

G2Point make_g2_point(const KForm<double>& phi);

// g(X x Y, Z) = phi(X, Y, Z).
Eigen::VectorXd cross(const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const G2Point& at);

bool is_skew(const Eigen::MatrixXd& A, const Eigen::MatrixXd& g, double tol);

// Max-norm of the derivation action of A on phi; A must be g-skew.
double g2_defect(const Eigen::MatrixXd& A, const G2Point& at, double skew_tol = 1e-9);

bool in_g2(const Eigen::MatrixXd& A, const G2Point& at, double tol = 1e-9);

// Kernel of the derivation action on so(7, g); 14 matrices.
std::vector<Eigen::MatrixXd> g2_basis(const G2Point& at);

// Dimension of {A in so(7, g) : A.phi = 0}.
int g2_stabilizer_dimension(const G2Point& at, double tol = 1e-9);

}  // namespace toricg2
