#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qgs/types.hpp"

namespace qgs {

// Vertex coupling of a generation with branching number b: the four GPI-like
// parameters (alpha_t, beta_t, gamma_t) acting on the radial part plus a
// (b-1)x(b-1) unitary U acting on the transversal part through V.
//
// V is stored as a (b-1) x b matrix with orthonormal rows, each orthogonal
// to (1,...,1); it projects edge data onto the non-radial subspace.
struct TreeVertexCoupling {
  double alpha_t = 0.0;
  double beta_t = 0.0;
  Complex gamma_t{0.0, 0.0};
  Eigen::MatrixXcd U;  // (b-1) x (b-1), unitary
  Eigen::MatrixXcd V;  // (b-1) x b, orthonormal rows perpendicular to (1,...,1)
};

// Orthonormalized difference basis of the complement of (1,...,1):
// row j = (1,...,1, -j, 0,...,0)/sqrt(j(j+1)). For b = 3 this reproduces
// the standard (1,-1,0)/sqrt2, (1,1,-2)/sqrt6 choice.
Eigen::MatrixXcd canonical_v(int b);

// Default transversal coupling, -I of size (b-1).
Eigen::MatrixXcd kirchhoff_u(int b);

TreeVertexCoupling make_vertex_coupling(int b, double alpha_t, double beta_t,
                                        Complex gamma_t);

struct Generation {
  int b = 1;       // branching number, >= 1
  double t = 0.0;  // distance from the root, > 0, strictly increasing
  TreeVertexCoupling coupling;
};

// Radial rooted metric tree: per-generation data plus the Robin angle of the
// root condition y'(0) + tan(theta0/2) y(0) = 0, theta0 in (-pi/2, pi/2].
struct RadialTreeSpec {
  double theta0 = 0.0;
  std::vector<Generation> generations;
};

struct ValidationIssue {
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_tree(const RadialTreeSpec& spec);

// Kostrykin-Schrader data of one vertex: A (f-, Psi)^T + B (-f-', Psi')^T = 0.
// A B* is Hermitian and (A, B) has maximal rank for every valid coupling.
struct VertexMatrices {
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
};

VertexMatrices vertex_matrices(const TreeVertexCoupling& c, int b);

struct CertificateReport {
  double hermiticity_residual = 0.0;  // max |(AB*) - (AB*)^*| entry
  double sigma_min = 0.0;             // smallest singular value of row-normalized (A, B)
  bool pass = false;                  // residual < 1e-12 and sigma_min > 1e-10
};

CertificateReport check_self_adjoint(const VertexMatrices& m);

// Phases of the unitary eigenvalues together with the diagonalizing W
// (rows = eigenbasis): U = W^{-1} diag(exp(i theta)) W, theta ascending
// in [0, 2pi).
struct EigenphaseDecomposition {
  std::vector<double> theta;
  Eigen::MatrixXcd W;
};

EigenphaseDecomposition eigenphases(const Eigen::MatrixXcd& u,
                                    double unitary_tol = 1e-12);

// Branching function g0(t) = b_0 b_1 ... b_k for t in (t_k, t_{k+1}).
int branching_function(const RadialTreeSpec& spec, double t);

}  // namespace qgs
