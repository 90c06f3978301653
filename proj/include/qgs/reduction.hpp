#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "qgs/coupling.hpp"
#include "qgs/tree.hpp"
#include "qgs/types.hpp"

namespace qgs {

struct DirichletBoth {};
struct NeumannBoth {};

// Exceptional branch of the reduction at gamma_t = 2(sqrt b + 1)/(sqrt b - 1),
// alpha_t = 0:  y+' = -y-',  y+ + y- = (beta_t/2)(sqrt b - 1)^2 (-y-').
struct SpecialBeta {
  double beta_t = 0.0;
  int b = 1;
  double rhs_factor() const;
};

// The sibling branch, beta_t = 0:
//   y+ = -y-,  y+' + y-' = -(alpha_t/2)(b^{-1/2} - 1)^2 y-.
struct SpecialAlpha {
  double alpha_t = 0.0;
  int b = 1;
  double rhs_factor() const;
};

using HalflineCoupling =
    std::variant<GpiCouplingA, DirichletBoth, NeumannBoth, SpecialBeta, SpecialAlpha>;

bool is_separating_point(const HalflineCoupling& c);

// Jump matrix of a halfline coupling, (y+, y+')^T = m (y-, y-')^T.
// Throws SeparatingCoupling for Dirichlet/Neumann points and separating GPIs.
Eigen::Matrix2cd halfline_jump(const HalflineCoupling& c);

// Real-matrix factor of the jump whose zeros/propagation agree with the full
// jump up to a spectral-parameter-independent complex scalar per point.
// Normalized to unit Frobenius norm.
Eigen::Matrix2d halfline_jump_real_factor(const HalflineCoupling& c);

// Radial part of a tree vertex coupling transformed to a halfline GPI,
// including the two exceptional branches and the b = 1 identity.
HalflineCoupling reduce_vertex_coupling(double alpha_t, double beta_t,
                                        Complex gamma_t, int b);
HalflineCoupling reduce_vertex_coupling(const TreeVertexCoupling& c, int b);

// Common denominator 4(sqrt b + 1)^2 + detA (sqrt b - 1)^2 + 4(1-b) Re gamma.
double reduction_denominator(double alpha_t, double beta_t, Complex gamma_t,
                             int b);

// Boundary condition y' cos(theta/2) + y sin(theta/2) = 0; theta = pi is
// Dirichlet, theta = 0 Neumann.
struct RootCondition {
  double theta = 0.0;

  bool is_dirichlet(double tol = 1e-12) const;
  // Initial data (y, y') satisfying the condition.
  Eigen::Vector2d seed() const;

  static RootCondition dirichlet() { return RootCondition{M_PI}; }
  static RootCondition neumann() { return RootCondition{0.0}; }
};

struct CouplingPoint {
  double t = 0.0;
  HalflineCoupling coupling;
};

// One summand of the Theorem-1 decomposition: a halfline [start, inf) with a
// Robin condition at the endpoint, GPI points at the later generation radii,
// and the number of identical copies in the orthogonal sum.
struct HalflineProblem {
  double start = 0.0;
  RootCondition root_bc;
  std::vector<CouplingPoint> points;
  long multiplicity = 1;
  int generation = 0;  // 0 for L_0
  int s_index = 0;     // 1-based transversal index, 0 for L_0
};

enum class TruncationPolicy {
  FreeContinuation,     // couplings beyond max_generation dropped
  DirichletTruncation,  // Dirichlet point inserted at the next generation radius
};

std::vector<HalflineProblem> decompose(
    const RadialTreeSpec& spec, int max_generation,
    TruncationPolicy policy = TruncationPolicy::FreeContinuation);

// b_0 b_1 ... b_{n-1} for the generation-n problems.
long multiplicity(const RadialTreeSpec& spec, int n);

}  // namespace qgs
