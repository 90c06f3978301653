#pragma once

#include <string>

#include "qgs/tree.hpp"
#include "qgs/types.hpp"

namespace qgs {

// 2x2 unitary W(theta1, theta2, phi, r) and U = W^{-1} diag(e^{i th1}, e^{i th2}) W
// of the worked b = 3 example.
Eigen::Matrix2cd example_w(double phi, double r);
Eigen::Matrix2cd example_u(double theta1, double theta2, double phi, double r);

// Two-generation radial tree: b = (3, 2), t = (1, 2.3), theta0 = pi/2,
// generic non-separating radial couplings, U_1 from the b = 3 example with
// (theta1, theta2, phi, r) = (pi/3, pi/5, 0.2, r), U_2 = (e^{2 pi i/5}).
RadialTreeSpec example_two_generation_tree(double r = 0.6);

// Sparse tree with purely ac spectrum: t_n = 2^n, b_n = 4,
// alpha_t = beta_t = 0, gamma_t = 2(sqrt b - 1)/(sqrt b + 1) = 2/3.
RadialTreeSpec example_sparse_free_tree(int n_generations = 10);

// Sparse tree covered by the no-ac theorem: t_n = 2^n, b_n = 2, delta-type
// couplings of the given strength, beta_t = gamma_t = 0.
RadialTreeSpec example_sparse_delta_tree(int n_generations = 10,
                                         double alpha_t = 1.0);

struct ReproduceReport {
  // (a) decomposition root phases against the eigenphases of U_1, U_2
  double max_phase_mismatch = 0.0;
  bool pass_phases = false;
  // (b) reduction of the sparse example couplings to the free coupling
  double max_free_reduction_residual = 0.0;
  bool pass_reduction = false;
  // (c) truncated two-generation tree against the decomposed halflines
  std::size_t direct_count = 0;
  std::size_t decomposed_count = 0;
  double max_eigenvalue_mismatch = 0.0;
  bool pass_equivalence = false;

  bool pass() const { return pass_phases && pass_reduction && pass_equivalence; }
};

// Golden run reproducing the worked decomposition example and the purely-ac
// counterexample checks at fixed built-in parameters.
ReproduceReport reproduce_example(double r = 0.6);

// Deterministic text rendering of the report, one line per check.
std::string reproduce_report_text(const ReproduceReport& rep);

}  // namespace qgs
