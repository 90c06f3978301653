#include "qgs/reduction.hpp"

#include <cmath>

namespace qgs {

double SpecialBeta::rhs_factor() const {
  const double s = std::sqrt(double(b)) - 1.0;
  return 0.5 * beta_t * s * s;
}

double SpecialAlpha::rhs_factor() const {
  const double s = 1.0 / std::sqrt(double(b)) - 1.0;
  return 0.5 * alpha_t * s * s;
}

bool is_separating_point(const HalflineCoupling& c) {
  if (std::holds_alternative<DirichletBoth>(c) ||
      std::holds_alternative<NeumannBoth>(c))
    return true;
  if (const auto* g = std::get_if<GpiCouplingA>(&c))
    return classify(*g) == CouplingClass::Separating;
  return false;
}

Eigen::Matrix2cd halfline_jump(const HalflineCoupling& c) {
  if (const auto* g = std::get_if<GpiCouplingA>(&c)) return jump_matrix(*g).m;
  if (const auto* sb = std::get_if<SpecialBeta>(&c)) {
    Eigen::Matrix2cd m;
    m << -1.0, -sb->rhs_factor(), 0.0, -1.0;
    return m;
  }
  if (const auto* sa = std::get_if<SpecialAlpha>(&c)) {
    Eigen::Matrix2cd m;
    m << -1.0, 0.0, -sa->rhs_factor(), -1.0;
    return m;
  }
  throw SeparatingCoupling("halfline_jump: Dirichlet/Neumann point has no jump matrix");
}

Eigen::Matrix2d halfline_jump_real_factor(const HalflineCoupling& c) {
  Eigen::Matrix2d n;
  if (const auto* g = std::get_if<GpiCouplingA>(&c)) {
    if (std::abs(separating_denominator(*g)) < kDegeneracyTol)
      throw SeparatingCoupling("halfline_jump_real_factor: separating coupling");
    n = jump_numerator(*g);
  } else {
    n = halfline_jump(c).real();
  }
  return n / n.norm();
}

double reduction_denominator(double alpha_t, double beta_t, Complex gamma_t,
                             int b) {
  const double sb = std::sqrt(double(b));
  const double det = alpha_t * beta_t + std::norm(gamma_t);
  return 4.0 * (sb + 1.0) * (sb + 1.0) + det * (sb - 1.0) * (sb - 1.0) +
         4.0 * (1.0 - b) * gamma_t.real();
}

HalflineCoupling reduce_vertex_coupling(double alpha_t, double beta_t,
                                        Complex gamma_t, int b) {
  if (b < 1) throw DimensionMismatch("reduce_vertex_coupling: b < 1");
  const double sb = std::sqrt(double(b));
  const double det = alpha_t * beta_t + std::norm(gamma_t);
  const double den = reduction_denominator(alpha_t, beta_t, gamma_t, b);

  if (std::abs(den) < kDegeneracyTol) {
    // For alpha_t*beta_t = 0 the denominator vanishes exactly at
    // gamma_t = 2(sqrt b + 1)/(sqrt b - 1); both parameters zero gives the
    // sign-flip conditions y+ = -y-, y+' = -y-' (SpecialBeta with factor 0).
    const bool alpha_zero = std::abs(alpha_t) < kDegeneracyTol;
    const bool beta_zero = std::abs(beta_t) < kDegeneracyTol;
    if (alpha_zero) return SpecialBeta{beta_t, b};
    if (beta_zero) return SpecialAlpha{alpha_t, b};
    throw UnhandledDegenerate(
        "reduce_vertex_coupling: denominator vanishes outside the two special branches");
  }

  GpiCouplingA out;
  out.alpha = 16.0 * alpha_t / den;
  out.beta = 16.0 * b * beta_t / den;
  out.gamma = 2.0 *
              Complex((1.0 - b) * (4.0 + det) + 4.0 * (b + 1.0) * gamma_t.real(),
                      8.0 * sb * gamma_t.imag()) /
              den;
  return out;
}

HalflineCoupling reduce_vertex_coupling(const TreeVertexCoupling& c, int b) {
  return reduce_vertex_coupling(c.alpha_t, c.beta_t, c.gamma_t, b);
}

bool RootCondition::is_dirichlet(double tol) const {
  return std::abs(std::cos(0.5 * theta)) < tol;
}

Eigen::Vector2d RootCondition::seed() const {
  return Eigen::Vector2d(std::cos(0.5 * theta), -std::sin(0.5 * theta));
}

long multiplicity(const RadialTreeSpec& spec, int n) {
  if (n < 1 || std::size_t(n) > spec.generations.size())
    throw OutOfRange("multiplicity: generation index out of range");
  long m = 1;
  for (int j = 0; j + 1 < n; ++j) m *= spec.generations[j].b;
  return m;
}

std::vector<HalflineProblem> decompose(const RadialTreeSpec& spec,
                                       int max_generation,
                                       TruncationPolicy policy) {
  const ValidationReport rep = validate_tree(spec);
  if (!rep.ok())
    throw Error("decompose: invalid tree spec (" + rep.issues.front().where +
                ": " + rep.issues.front().message + ")");
  if (max_generation < 0 || std::size_t(max_generation) > spec.generations.size())
    throw OutOfRange("decompose: max_generation out of range");

  // Interior couplings seen by a problem rooted at generation n.
  auto points_from = [&](int n) {
    std::vector<CouplingPoint> pts;
    for (int k = n + 1; k <= max_generation; ++k) {
      const Generation& g = spec.generations[k - 1];
      pts.push_back({g.t, reduce_vertex_coupling(g.coupling, g.b)});
    }
    if (policy == TruncationPolicy::DirichletTruncation &&
        std::size_t(max_generation) < spec.generations.size())
      pts.push_back({spec.generations[max_generation].t, DirichletBoth{}});
    return pts;
  };

  std::vector<HalflineProblem> out;
  HalflineProblem l0;
  l0.start = 0.0;
  l0.root_bc = RootCondition{spec.theta0};
  l0.points = points_from(0);
  l0.multiplicity = 1;
  out.push_back(std::move(l0));

  for (int n = 1; n <= max_generation; ++n) {
    const Generation& g = spec.generations[n - 1];
    if (g.b < 2) continue;  // no transversal subspaces
    const auto phases = eigenphases(g.coupling.U);
    const long base_mult = multiplicity(spec, n);
    const auto pts = points_from(n);

    // Numerically coincident phases merge into one problem with summed
    // multiplicity; the decomposition depends only on the phase multiset.
    std::size_t i = 0;
    int s = 1;
    while (i < phases.theta.size()) {
      std::size_t j = i + 1;
      while (j < phases.theta.size() &&
             phases.theta[j] - phases.theta[i] < 1e-10)
        ++j;
      HalflineProblem p;
      p.start = g.t;
      p.root_bc = RootCondition{phases.theta[i]};
      p.points = pts;
      p.multiplicity = base_mult * long(j - i);
      p.generation = n;
      p.s_index = s;
      out.push_back(std::move(p));
      ++s;
      i = j;
    }
  }
  return out;
}

}  // namespace qgs
