#pragma once

#include <Eigen/Dense>
#include <array>

#include "qgs/types.hpp"

namespace qgs {

// Generalized point interaction in the matrix form
//
//   y+' - y-' = (alpha/2)(y+ + y-) + (gamma/2)(y+' + y-')
//   y+  - y-  = -(conj(gamma)/2)(y+ + y-) + (beta/2)(y+' + y-')
//
// characterized by A = [[alpha, gamma], [-conj(gamma), beta]],
// alpha, beta real, gamma complex.
struct GpiCouplingA {
  double alpha = 0.0;   // strength, dimension 1/length
  double beta = 0.0;    // dimension length
  Complex gamma{0.0, 0.0};

  double det_a() const { return alpha * beta + std::norm(gamma); }
  Eigen::Matrix2cd matrix() const;
};

// Derivative-from-value form (y+', -y-')^T = [[a, c],[conj(c), d]] (y+, y-)^T.
// Valid only for couplings with beta != 0; decouples the leads when c = 0.
struct GpiCouplingB {
  double a = 0.0;
  double d = 0.0;
  Complex c{0.0, 0.0};
};

// Universal unitary form (U - I)(y+, y-)^T + i(U + I)(y+', -y-')^T = 0 with
// U = exp(i xi) [[u1, u2], [-conj(u2), conj(u1)]], |u1|^2 + |u2|^2 = 1.
struct GpiCouplingU {
  double xi = 0.0;  // in [0, pi)
  Complex u1{0.0, 0.0};
  Complex u2{0.0, 0.0};

  // Norm of (u1, u2) produced by the closed-form expressions before
  // renormalization; deviations from 1 beyond 1e-9 are flagged.
  double raw_norm = 1.0;
  bool norm_warning = false;
  // False when the closed-form route failed validation and U was rebuilt
  // directly from two independent boundary solutions.
  bool from_closed_form = true;

  Eigen::Matrix2cd matrix() const;
};

enum class CouplingClass {
  Generic,
  Delta,          // beta = gamma = 0
  DeltaPrime,     // alpha = gamma = 0, beta != 0
  Separating,     // det A = 4, Im gamma = 0
  DirichletBoth,  // not representable by a finite A-form
  NeumannBoth,    // not representable by a finite A-form
};

// 2x2 matrix propagating (y, y') data through a GPI from left to right:
// (y+, y+')^T = m (y-, y-')^T. |det m| = 1; det m = 1 when Im gamma = 0.
struct JumpMatrix {
  Eigen::Matrix2cd m;
};

GpiCouplingB a_to_b(const GpiCouplingA& c);
GpiCouplingA b_to_a(const GpiCouplingB& c);
GpiCouplingU a_to_unitary(const GpiCouplingA& c);
CouplingClass classify(const GpiCouplingA& c, double tol = kDegeneracyTol);
JumpMatrix jump_matrix(const GpiCouplingA& c);

// Real numerator of the jump matrix,
//   [[4 + detA - 4 Re g, 4 beta], [4 alpha, 4 + detA + 4 Re g]],
// always defined; the full jump is numerator / (4 - detA - 4i Im g).
Eigen::Matrix2d jump_numerator(const GpiCouplingA& c);

// 4 - det A - 4i Im gamma; vanishes exactly on separating couplings.
Complex separating_denominator(const GpiCouplingA& c);

// Two orthonormal solutions (y+, y-, y+', y-') of the coupling conditions,
// spanning the full boundary solution space.
std::array<Eigen::Vector4cd, 2> boundary_basis(const GpiCouplingA& c);

// Residual norm of (U - I)(y+, y-)^T + i(U + I)(y+', -y-')^T for one
// boundary quadruple q = (y+, y-, y+', y-').
double unitary_relation_residual(const Eigen::Matrix2cd& u,
                                 const Eigen::Vector4cd& q);

}  // namespace qgs
