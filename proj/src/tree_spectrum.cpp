#include "qgs/tree_spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qgs/spectral.hpp"

namespace qgs {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Edge {
  int from = 0;
  int to = 0;
  double length = 0.0;
};

struct BondGraph {
  // vertex id 0 is the root; generation[v] = 0 root, 1..N internal, -1 leaf
  std::vector<int> generation;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> ports_in;   // per vertex: incoming bond ids, port order
  std::vector<std::vector<int>> ports_out;  // per vertex: outgoing bond ids, port order
};

// Explicit edge expansion of a radial tree up to the cutoff. Edge e spawns
// bonds 2e (from->to) and 2e+1 (to->from). Port 0 of an internal vertex is
// the edge toward the root, matching the first column of (A_v, B_v).
BondGraph build_bond_graph(const RadialTreeSpec& spec, double cutoff_t) {
  BondGraph g;
  g.generation.push_back(0);
  std::vector<int> frontier{0};
  double prev_t = 0.0;

  const int n_gen = int(spec.generations.size());
  long edge_budget = 1;
  for (int k = 0; k < n_gen; ++k) {
    edge_budget *= std::max(1, spec.generations[k].b);
    if (edge_budget > 20000)
      throw OutOfRange("tree_eigenvalues_direct: tree too large to expand edge by edge");
  }

  for (int k = 1; k <= n_gen; ++k) {
    const Generation& gen = spec.generations[k - 1];
    std::vector<int> next;
    for (int parent : frontier) {
      const int vid = int(g.generation.size());
      g.generation.push_back(k);
      g.edges.push_back({parent, vid, gen.t - prev_t});
      next.push_back(vid);
    }
    // each generation-k vertex emits b_k forward edges
    std::vector<int> expanded;
    for (int v : next)
      for (int j = 0; j < gen.b; ++j) expanded.push_back(v);
    frontier = std::move(expanded);
    prev_t = gen.t;
  }
  for (int parent : frontier) {
    const int vid = int(g.generation.size());
    g.generation.push_back(-1);
    g.edges.push_back({parent, vid, cutoff_t - prev_t});
  }

  const int nv = int(g.generation.size());
  g.ports_in.assign(nv, {});
  g.ports_out.assign(nv, {});
  for (int e = 0; e < int(g.edges.size()); ++e) {
    const Edge& ed = g.edges[e];
    // at ed.to, the parent-side edge: incoming bond 2e, outgoing 2e+1
    g.ports_in[ed.to].push_back(2 * e);
    g.ports_out[ed.to].push_back(2 * e + 1);
    // at ed.from, a child edge: incoming 2e+1, outgoing 2e
    g.ports_in[ed.from].push_back(2 * e + 1);
    g.ports_out[ed.from].push_back(2 * e);
  }
  return g;
}

struct SecularContext {
  BondGraph graph;
  std::vector<VertexMatrices> vertex_ab;  // per generation, shared
  double theta0 = 0.0;
  double total_length = 0.0;

  Eigen::MatrixXcd bond_matrix(double k) const {
    const int nb = 2 * int(graph.edges.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nb, nb);

    // per-generation scattering matrices (all same-generation vertices share one)
    std::vector<Eigen::MatrixXcd> s_gen(vertex_ab.size());
    for (std::size_t i = 0; i < vertex_ab.size(); ++i) {
      const Eigen::MatrixXcd& a = vertex_ab[i].A;
      const Eigen::MatrixXcd& b = vertex_ab[i].B;
      s_gen[i] = -(a + kI * k * b).partialPivLu().solve(a - kI * k * b);
    }
    const Complex s_root =
        -(std::tan(0.5 * theta0) - kI * k) / (std::tan(0.5 * theta0) + kI * k);

    for (int v = 0; v < int(graph.generation.size()); ++v) {
      const int gen = graph.generation[v];
      const auto& pin = graph.ports_in[v];
      const auto& pout = graph.ports_out[v];
      auto phase = [&](int bond) {
        return std::exp(kI * k * graph.edges[bond / 2].length);
      };
      if (gen == 0) {
        m(pout[0], pin[0]) = s_root * phase(pin[0]);
      } else if (gen < 0) {
        m(pout[0], pin[0]) = -phase(pin[0]);  // Dirichlet leaf
      } else {
        const Eigen::MatrixXcd& s = s_gen[gen - 1];
        for (std::size_t i = 0; i < pout.size(); ++i)
          for (std::size_t j = 0; j < pin.size(); ++j)
            m(pout[i], pin[j]) = s(i, j) * phase(pin[j]);
      }
    }
    return m;
  }
};

struct DetPair {
  Complex secular;  // det(I - M)
  Complex det_m;    // det(M), unimodular
};

DetPair determinants(const SecularContext& ctx, double k) {
  const Eigen::MatrixXcd m = ctx.bond_matrix(k);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  DetPair out;
  out.secular = (id - m).partialPivLu().determinant();
  out.det_m = m.partialPivLu().determinant();
  return out;
}

int multiplicity_at(const SecularContext& ctx, double k, double phase_tol) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ctx.bond_matrix(k), false);
  int count = 0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    if (std::abs(std::arg(es.eigenvalues()(j))) < phase_tol) ++count;
  return std::max(count, 1);
}

}  // namespace

std::vector<TreeEigenvalue> tree_eigenvalues_direct(const RadialTreeSpec& spec,
                                                    double cutoff_t,
                                                    double e_min, double e_max,
                                                    double k_step) {
  const ValidationReport rep = validate_tree(spec);
  if (!rep.ok())
    throw Error("tree_eigenvalues_direct: invalid tree spec (" +
                rep.issues.front().message + ")");
  if (!spec.generations.empty() && cutoff_t <= spec.generations.back().t)
    throw OutOfRange("tree_eigenvalues_direct: cutoff_t must exceed the last generation radius");

  SecularContext ctx;
  ctx.graph = build_bond_graph(spec, cutoff_t);
  ctx.theta0 = spec.theta0;
  for (const Generation& g : spec.generations)
    ctx.vertex_ab.push_back(vertex_matrices(g.coupling, g.b));
  for (const Edge& e : ctx.graph.edges) ctx.total_length += e.length;

  const double k_lo = std::sqrt(std::max(e_min, 1e-8));
  const double k_hi = std::sqrt(e_max);
  if (!(k_hi > k_lo)) return {};

  // M(k) is unitary, so e^{-i arg(det M)/2} det(I - M) is real; unwrap the
  // determinant phase along the grid to keep that function continuous.
  std::vector<TreeEigenvalue> out;
  double psi = 0.0;
  Complex prev_det_m{0.0, 0.0};
  double prev_f = 0.0;
  double prev_k = k_lo;
  bool first = true;

  const double mult_phase_tol = 3e-6;

  for (double k = k_lo; k <= k_hi + 0.5 * k_step; k += k_step) {
    const DetPair d = determinants(ctx, k);
    if (first) {
      psi = std::arg(d.det_m);
    } else {
      psi += std::arg(d.det_m / prev_det_m);
    }
    prev_det_m = d.det_m;
    const double f = (std::exp(-0.5 * kI * psi) * d.secular).real();

    if (!first && prev_f * f < 0.0) {
      // refine with a locally anchored phase reference
      const DetPair anchor = determinants(ctx, prev_k);
      const double psi_anchor = std::arg(anchor.det_m);
      auto f_at = [&](double kk) {
        const DetPair dd = determinants(ctx, kk);
        const double p = psi_anchor + std::arg(dd.det_m / anchor.det_m);
        return (std::exp(-0.5 * kI * p) * dd.secular).real();
      };
      double lo = prev_k, hi = k, flo = f_at(prev_k);
      for (int it = 0; it < 80 && (hi - lo) > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f_at(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      const double k0 = 0.5 * (lo + hi);
      out.push_back({k0 * k0, multiplicity_at(ctx, k0, mult_phase_tol)});
    }
    prev_f = f;
    prev_k = k;
    first = false;
  }

  std::sort(out.begin(), out.end(),
            [](const TreeEigenvalue& a, const TreeEigenvalue& b) { return a.e < b.e; });
  return out;
}

std::vector<double> expand_multiplicities(const std::vector<TreeEigenvalue>& evs) {
  std::vector<double> out;
  for (const TreeEigenvalue& ev : evs)
    for (int j = 0; j < ev.multiplicity; ++j) out.push_back(ev.e);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> decomposed_eigenvalues(const RadialTreeSpec& spec,
                                           double cutoff_t, double e_min,
                                           double e_max, int grid) {
  const auto problems = decompose(spec, int(spec.generations.size()));
  std::vector<double> out;
  for (const HalflineProblem& p : problems) {
    const EigenvalueList evs = truncated_eigenvalues(
        p, cutoff_t, RootCondition::dirichlet(), e_min, e_max, grid);
    for (double e : evs.values)
      for (long j = 0; j < p.multiplicity; ++j) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qgs
