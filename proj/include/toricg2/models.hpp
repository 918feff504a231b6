#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "toricg2/forms.hpp"
#include "toricg2/jet.hpp"

namespace toricg2 {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------------------------
// Trivalent graphs in R^4 = (nu1, nu2, nu3, mu)

struct GraphEdge {
  std::optional<int> from;  // vertex index, or none for the far end of a ray / line
  std::optional<int> to;
  Eigen::Vector4i slope = Eigen::Vector4i::Zero();  // points from `from` towards `to`
  bool ray = false;
};

struct GraphR4 {
  std::vector<Vec4> vertices;
  std::vector<GraphEdge> edges;
  // Columns generate the lattice in which slopes are primitive.
  Eigen::Matrix4i lattice = Eigen::Matrix4i::Identity();
  // A point on each edge with neither endpoint (full lines).
  Vec4 anchor = Vec4::Zero();
};

struct GraphCheck {
  bool trivalent = true;
  bool balanced = true;   // primitive slopes sum to zero at every vertex
  bool level = true;      // every edge lies in a {mu = const} subspace
  bool primitive = true;
  bool consistent = true; // finite edges point along their slope
  std::vector<std::string> problems;

  bool ok() const { return trivalent && balanced && level && primitive && consistent; }
};

GraphCheck check_graph(const GraphR4& g);

// Outgoing primitive slopes at vertex v.
std::vector<Eigen::Vector4i> slopes_at(const GraphR4& g, int v);

// ---------------------------------------------------------------------------------------------
// Flat models

struct FlatC3Point {
  double x = 0.0;
  cplx z1, z2, z3;
};

// (nu1, nu2, nu3, mu)
Vec4 mmm_c3(const FlatC3Point& pt);
Mat3 B_c3(const FlatC3Point& pt);
Mat3 V_c3(const FlatC3Point& pt);  // throws on singular orbits

// (x + s, e^{i theta} z1, e^{i phi} z2, e^{-i(theta + phi)} z3)
FlatC3Point c3_torus_act(const FlatC3Point& pt, double s, double theta, double phi);

struct C3Orbit {
  double t = 0.0;
  Eigen::Vector3d moduli = Eigen::Vector3d::Zero();  // |z1|^2, |z2|^2, |z3|^2
  cplx product;                                       // z1 z2 z3
  FlatC3Point representative;                         // real z1, z2; phase on z3
};

// Orbit with the given multi-moment value (p1, p2, p3, q).
C3Orbit rho_inverse(const Vec4& value);

struct FlatT2RC2Point {
  double x = 0.0, y = 0.0, u = 0.0;
  cplx z, w;
};

Vec4 mmm_t2rc2(const FlatT2RC2Point& pt);
// mu^2 + nu1^2 + nu2^2 - (|z|^2 + |w|^2)^2 / 4
double t2rc2_sphere_defect(const FlatT2RC2Point& pt);

struct SigmaRelation {
  double residual = 0.0;
  double slack = 0.0;  // >= 0 on the image
};

SigmaRelation sigma_relations_4d(cplx z, cplx w);
SigmaRelation sigma_relations_6d(cplx z1, cplx z2, cplx z3);

GraphR4 flat_graph_c3();
GraphR4 flat_graph_t2rc2();

// ---------------------------------------------------------------------------------------------
// Bryant-Salamon and cone on S^3 x S^3
//
// Frame slots: 0 = dr, 1..3 = e^1..e^3, 4..6 = f^1..f^3.

struct QuatPair {
  Eigen::Quaterniond p = Eigen::Quaterniond::Identity();
  Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
  double r = 1.0;
  double eps = 0.0;
};

// conj(p) i p as a vector in Im H = R^3 with basis (i, j, k).
Eigen::Vector3d hopf(const Eigen::Quaterniond& p);

Vec4 bs_mmm(const QuatPair& pt);
Mat3 bs_Vinv(const QuatPair& pt);

KForm<double> nk_sigma();
KForm<double> nk_psi();
KForm<double> nk_psi_hat();
KForm<double> phi_bs(double r, double eps);
KForm<double> star_phi_bs(double r, double eps);

// U_1, U_2, U_3 in frame components.
std::array<Eigen::VectorXd, 3> bs_generators(const QuatPair& pt);
Mat3 bs_frame_B(const QuatPair& pt);

// (r^3 nu~, r^4 mu~ / 2) with nu~_i = sigma(U_j, U_k) / 3 and mu~ = psi^(U_1, U_2, U_3) / 2.
Vec4 cone_mmm_from_forms(const QuatPair& pt);

// Curve (r + s dr, p exp(s a), q exp(s b)) for imaginary a, b.
struct QuatDirection {
  double dr = 0.0;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
};

QuatPair bs_flow(const QuatPair& pt, const QuatDirection& dir, double s);
Eigen::VectorXd bs_tangent(const QuatDirection& dir);

struct DifferentialCheck {
  Vec4 finite_difference = Vec4::Zero();
  Vec4 from_forms = Vec4::Zero();  // phi(U_j, U_k, X), *phi(U_1, U_2, U_3, X)
  double residual = 0.0;
};

DifferentialCheck bs_mmm_differential_check(const QuatPair& pt, const QuatDirection& dir, double h = 1e-5);

GraphR4 bs_graph(double eps);

// ---------------------------------------------------------------------------------------------
// Stenzel metric on the quadric sum z_j^2 = 1

using QuadricPoint = std::array<cplx, 4>;

Vec4 quadric_mmm(const QuadricPoint& z, double f_prime);

// Rotation by angle s in the (z0, z1) plane (which = 2) or the (z2, z3) plane (which = 3).
QuadricPoint quadric_rotate(const QuadricPoint& z, int which, double s);

// f'(|z|^2) with |z|^2 = cosh u and ((f_u)^3)_u = 3k sinh^2 u.
double stenzel_f_prime(double norm_sq, double k = 1.0);

}  // namespace toricg2
