#include "qgs/builtin.hpp"

#include <algorithm>
#include <cmath>

#include "qgs/json_io.hpp"
#include "qgs/reduction.hpp"
#include "qgs/spectral.hpp"
#include "qgs/tree_spectrum.hpp"

namespace qgs {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Eigen::Matrix2cd example_w(double phi, double r) {
  const double q = std::sqrt(1.0 - r * r);
  Eigen::Matrix2cd w;
  w << r * std::exp(kI * phi), q * std::exp(-kI * phi),
       q * std::exp(kI * phi), -r * std::exp(-kI * phi);
  return w;
}

Eigen::Matrix2cd example_u(double theta1, double theta2, double phi, double r) {
  const Eigen::Matrix2cd w = example_w(phi, r);
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::exp(kI * theta1);
  d(1, 1) = std::exp(kI * theta2);
  return w.inverse() * d * w;
}

RadialTreeSpec example_two_generation_tree(double r) {
  RadialTreeSpec spec;
  spec.theta0 = 0.5 * M_PI;

  Generation g1;
  g1.b = 3;
  g1.t = 1.0;
  g1.coupling = make_vertex_coupling(3, 0.7, 0.4, Complex(0.25, 0.0));
  g1.coupling.U = example_u(M_PI / 3.0, M_PI / 5.0, 0.2, r);
  spec.generations.push_back(std::move(g1));

  Generation g2;
  g2.b = 2;
  g2.t = 2.3;
  g2.coupling = make_vertex_coupling(2, -0.3, 0.8, Complex(-0.15, 0.0));
  g2.coupling.U(0, 0) = std::exp(kI * (0.4 * M_PI));
  spec.generations.push_back(std::move(g2));
  return spec;
}

RadialTreeSpec example_sparse_free_tree(int n_generations) {
  RadialTreeSpec spec;
  spec.theta0 = 0.5 * M_PI;
  for (int n = 1; n <= n_generations; ++n) {
    Generation g;
    g.b = 4;
    g.t = std::ldexp(1.0, n);  // 2^n
    g.coupling = make_vertex_coupling(4, 0.0, 0.0, Complex(2.0 / 3.0, 0.0));
    spec.generations.push_back(std::move(g));
  }
  return spec;
}

RadialTreeSpec example_sparse_delta_tree(int n_generations, double alpha_t) {
  RadialTreeSpec spec;
  spec.theta0 = 0.5 * M_PI;
  for (int n = 1; n <= n_generations; ++n) {
    Generation g;
    g.b = 2;
    g.t = std::ldexp(1.0, n);
    g.coupling = make_vertex_coupling(2, alpha_t, 0.0, Complex(0.0, 0.0));
    spec.generations.push_back(std::move(g));
  }
  return spec;
}

ReproduceReport reproduce_example(double r) {
  ReproduceReport rep;
  const RadialTreeSpec tree = example_two_generation_tree(r);

  // (a) root phases of the decomposition against the eigenphases of U_1, U_2
  const auto problems = decompose(tree, 2);
  const auto ph1 = eigenphases(tree.generations[0].coupling.U);
  const auto ph2 = eigenphases(tree.generations[1].coupling.U);
  std::vector<double> expected = ph1.theta;
  expected.insert(expected.end(), ph2.theta.begin(), ph2.theta.end());
  std::sort(expected.begin(), expected.end());
  std::vector<double> got;
  for (const HalflineProblem& p : problems)
    if (p.generation > 0)
      for (long c = 0; c < p.multiplicity / multiplicity(tree, p.generation); ++c)
        got.push_back(p.root_bc.theta);
  std::sort(got.begin(), got.end());
  rep.max_phase_mismatch = 0.0;
  if (got.size() != expected.size()) {
    rep.max_phase_mismatch = INFINITY;
  } else {
    for (std::size_t i = 0; i < got.size(); ++i)
      rep.max_phase_mismatch =
          std::max(rep.max_phase_mismatch, std::abs(got[i] - expected[i]));
  }
  rep.pass_phases = rep.max_phase_mismatch < 1e-10;

  // (b) the sparse example couplings reduce to the free coupling
  const RadialTreeSpec sparse = example_sparse_free_tree(10);
  rep.max_free_reduction_residual = 0.0;
  for (const Generation& g : sparse.generations) {
    const HalflineCoupling red = reduce_vertex_coupling(g.coupling, g.b);
    const auto* gpi = std::get_if<GpiCouplingA>(&red);
    if (!gpi) {
      rep.max_free_reduction_residual = INFINITY;
      break;
    }
    rep.max_free_reduction_residual = std::max(
        {rep.max_free_reduction_residual, std::abs(gpi->alpha), std::abs(gpi->beta),
         std::abs(gpi->gamma)});
  }
  rep.pass_reduction = rep.max_free_reduction_residual < 1e-12;

  // (c) unitary equivalence at desk scale: Dirichlet truncation at t = 4,
  // all eigenvalues below 100
  const double cutoff = 4.0;
  const auto direct =
      expand_multiplicities(tree_eigenvalues_direct(tree, cutoff, 1e-6, 100.0));
  const auto decomposed = decomposed_eigenvalues(tree, cutoff, 1e-6, 100.0);
  rep.direct_count = direct.size();
  rep.decomposed_count = decomposed.size();
  if (direct.size() == decomposed.size() && !direct.empty()) {
    rep.max_eigenvalue_mismatch = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i)
      rep.max_eigenvalue_mismatch =
          std::max(rep.max_eigenvalue_mismatch, std::abs(direct[i] - decomposed[i]));
  } else {
    rep.max_eigenvalue_mismatch = INFINITY;
  }
  rep.pass_equivalence = rep.max_eigenvalue_mismatch < 1e-8;
  return rep;
}

std::string reproduce_report_text(const ReproduceReport& rep) {
  std::string s;
  s += std::string(rep.pass_phases ? "PASS" : "FAIL") +
       " root phases match eigenphases: max mismatch " +
       format_double(rep.max_phase_mismatch) + "\n";
  s += std::string(rep.pass_reduction ? "PASS" : "FAIL") +
       " sparse example reduces to the free coupling: max residual " +
       format_double(rep.max_free_reduction_residual) + "\n";
  s += std::string(rep.pass_equivalence ? "PASS" : "FAIL") +
       " truncated tree vs decomposition: " + std::to_string(rep.direct_count) +
       " vs " + std::to_string(rep.decomposed_count) + " eigenvalues, max mismatch " +
       format_double(rep.max_eigenvalue_mismatch) + "\n";
  return s;
}

}  // namespace qgs
