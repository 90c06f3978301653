#include "qgs/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgs {

namespace {
constexpr Complex kI{0.0, 1.0};

std::string gen_label(std::size_t i) {
  return "generations[" + std::to_string(i) + "]";
}
}  // namespace

Eigen::MatrixXcd canonical_v(int b) {
  if (b < 1) throw DimensionMismatch("canonical_v: b must be >= 1");
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(b - 1, b);
  for (int j = 1; j < b; ++j) {
    const double norm = std::sqrt(double(j) * (j + 1));
    for (int m = 0; m < j; ++m) v(j - 1, m) = 1.0 / norm;
    v(j - 1, j) = -double(j) / norm;
  }
  return v;
}

Eigen::MatrixXcd kirchhoff_u(int b) {
  if (b < 1) throw DimensionMismatch("kirchhoff_u: b must be >= 1");
  return -Eigen::MatrixXcd::Identity(b - 1, b - 1);
}

TreeVertexCoupling make_vertex_coupling(int b, double alpha_t, double beta_t,
                                        Complex gamma_t) {
  TreeVertexCoupling c;
  c.alpha_t = alpha_t;
  c.beta_t = beta_t;
  c.gamma_t = gamma_t;
  c.U = kirchhoff_u(b);
  c.V = canonical_v(b);
  return c;
}

ValidationReport validate_tree(const RadialTreeSpec& spec) {
  ValidationReport rep;
  auto add = [&rep](std::string where, std::string msg) {
    rep.issues.push_back({std::move(where), std::move(msg)});
  };

  if (!(spec.theta0 > -M_PI_2 && spec.theta0 <= M_PI_2) ||
      !std::isfinite(spec.theta0))
    add("theta0", "root Robin angle outside (-pi/2, pi/2]");

  double prev_t = 0.0;
  for (std::size_t i = 0; i < spec.generations.size(); ++i) {
    const Generation& g = spec.generations[i];
    const std::string where = gen_label(i);
    if (g.b < 1) add(where, "branching number b < 1");
    if (!(g.t > 0.0) || !std::isfinite(g.t)) add(where, "t not a positive real");
    if (g.t <= prev_t) add(where, "t not strictly increasing");
    prev_t = g.t;

    const TreeVertexCoupling& c = g.coupling;
    if (!std::isfinite(c.alpha_t) || !std::isfinite(c.beta_t) ||
        !std::isfinite(c.gamma_t.real()) || !std::isfinite(c.gamma_t.imag()))
      add(where, "coupling parameters not finite");
    if (g.b < 1) continue;

    const int n = g.b - 1;
    if (c.U.rows() != n || c.U.cols() != n) {
      add(where, "U dimension != (b-1) x (b-1)");
      continue;
    }
    if (c.V.rows() != n || c.V.cols() != g.b) {
      add(where, "V dimension != (b-1) x b");
      continue;
    }
    if (n > 0) {
      const double u_err =
          (c.U * c.U.adjoint() - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff();
      if (u_err > 1e-12) add(where, "U not unitary");
      const double v_err =
          (c.V * c.V.adjoint() - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff();
      if (v_err > 1e-12) add(where, "V rows not orthonormal");
      const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(g.b);
      if ((c.V * ones).cwiseAbs().maxCoeff() > 1e-12)
        add(where, "V row not perpendicular to (1,...,1)");
    }
  }
  return rep;
}

VertexMatrices vertex_matrices(const TreeVertexCoupling& c, int b) {
  if (b < 1) throw DimensionMismatch("vertex_matrices: b < 1");
  const int n = b - 1;
  if (c.U.rows() != n || c.U.cols() != n || c.V.rows() != n || c.V.cols() != b)
    throw DimensionMismatch("vertex_matrices: U/V dimensions do not match b");

  VertexMatrices out;
  out.A = Eigen::MatrixXcd::Zero(b + 1, b + 1);
  out.B = Eigen::MatrixXcd::Zero(b + 1, b + 1);
  const Complex g = c.gamma_t;
  const Complex gc = std::conj(g);

  out.A(0, 0) = -0.5 * c.alpha_t;
  out.A(1, 0) = -(1.0 - 0.5 * gc);
  out.B(0, 0) = 1.0 + 0.5 * g;
  out.B(1, 0) = 0.5 * c.beta_t;
  for (int j = 1; j <= b; ++j) {
    out.A(0, j) = -0.5 * c.alpha_t / double(b);
    out.A(1, j) = (1.0 + 0.5 * gc) / double(b);
    out.B(0, j) = 1.0 - 0.5 * g;
    out.B(1, j) = -0.5 * c.beta_t;
  }
  if (n > 0) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    out.A.block(2, 1, n, b) = (c.U - id) * c.V;
    out.B.block(2, 1, n, b) = kI * (c.U + id) * c.V;
  }
  return out;
}

CertificateReport check_self_adjoint(const VertexMatrices& m) {
  CertificateReport rep;
  const Eigen::MatrixXcd h = m.A * m.B.adjoint();
  rep.hermiticity_residual = (h - h.adjoint()).cwiseAbs().maxCoeff();

  Eigen::MatrixXcd ab(m.A.rows(), m.A.cols() + m.B.cols());
  ab << m.A, m.B;
  for (Eigen::Index r = 0; r < ab.rows(); ++r) {
    const double norm = ab.row(r).norm();
    if (norm > 0.0) ab.row(r) /= norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ab);
  rep.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  rep.pass = rep.hermiticity_residual < 1e-12 && rep.sigma_min > 1e-10;
  return rep;
}

EigenphaseDecomposition eigenphases(const Eigen::MatrixXcd& u,
                                    double unitary_tol) {
  const Eigen::Index n = u.rows();
  if (u.cols() != n) throw DimensionMismatch("eigenphases: U not square");
  EigenphaseDecomposition out;
  if (n == 0) {
    out.W.resize(0, 0);
    return out;
  }
  if ((u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() >
      unitary_tol)
    throw NotUnitary("eigenphases: input not unitary within tolerance");

  // A unitary matrix is normal, so its Schur form is diagonal and the Schur
  // basis is an orthonormal eigenbasis; this stays stable on repeated phases.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  const Eigen::MatrixXcd q = schur.matrixU();
  const Eigen::VectorXcd diag = schur.matrixT().diagonal();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phase(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double th = std::arg(diag(j));
    if (th < 0.0) th += 2.0 * M_PI;
    phase[j] = th;
  }
  std::sort(order.begin(), order.end(),
            [&phase](int a, int b) { return phase[a] < phase[b]; });

  out.theta.resize(n);
  out.W.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.theta[j] = phase[order[j]];
    out.W.row(j) = q.col(order[j]).adjoint();
  }
  return out;
}

int branching_function(const RadialTreeSpec& spec, double t) {
  if (!(t > 0.0)) throw OutOfRange("branching_function: t must be positive");
  long prod = 1;
  for (const Generation& g : spec.generations) {
    if (std::abs(t - g.t) < 1e-14)
      throw OnVertex("branching_function: t coincides with a vertex");
    if (g.t < t) prod *= g.b;
  }
  if (prod > std::numeric_limits<int>::max())
    throw OutOfRange("branching_function: product overflows int");
  return static_cast<int>(prod);
}

}  // namespace qgs
