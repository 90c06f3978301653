#pragma once

#include <vector>

#include "qgs/reduction.hpp"
#include "qgs/tree.hpp"
#include "qgs/types.hpp"

namespace qgs {

struct TreeEigenvalue {
  double e = 0.0;
  int multiplicity = 1;
};

// Eigenvalues of the tree Hamiltonian truncated at |x| = cutoff_t with
// Dirichlet conditions there, assembled edge by edge: every directed edge
// carries a plane-wave amplitude, vertices scatter through
// S_v(k) = -(A_v + ik B_v)^{-1}(A_v - ik B_v), and eigenvalues are the zeros
// of det(I - M(k)) for the bond propagation-scattering matrix M. The
// determinant is reduced to a real function via the unitarity of M, located
// by sign-change bisection on a k-grid of step k_step, and multiplicities are
// read off the eigenphases of M at the root.
//
// Completely independent of the halfline decomposition; the two routes are
// compared by the Theorem-1 equivalence checks.
std::vector<TreeEigenvalue> tree_eigenvalues_direct(const RadialTreeSpec& spec,
                                                    double cutoff_t,
                                                    double e_min, double e_max,
                                                    double k_step = 2.5e-4);

// Multiplicity-expanded, sorted union over the decomposed halfline problems,
// truncated at cutoff_t with Dirichlet conditions.
std::vector<double> decomposed_eigenvalues(const RadialTreeSpec& spec,
                                           double cutoff_t, double e_min,
                                           double e_max, int grid = 4000);

// Expand (e, multiplicity) pairs into a flat sorted list.
std::vector<double> expand_multiplicities(const std::vector<TreeEigenvalue>& evs);

}  // namespace qgs
