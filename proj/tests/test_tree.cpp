#include <doctest.h>

#include "qgs/builtin.hpp"
#include "qgs/tree.hpp"
#include "test_util.hpp"

using namespace qgs;

namespace {

RadialTreeSpec three_generation_spec() {
  RadialTreeSpec spec;
  spec.theta0 = 0.3;
  int bs[3] = {3, 2, 2};
  double ts[3] = {1.0, 3.0, 7.0};
  for (int i = 0; i < 3; ++i) {
    Generation g;
    g.b = bs[i];
    g.t = ts[i];
    g.coupling = make_vertex_coupling(bs[i], 0.1 * i, 0.2, Complex(0.0, 0.1));
    spec.generations.push_back(g);
  }
  return spec;
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("validate_tree accepts a well-formed spec") {
  CHECK(validate_tree(three_generation_spec()).ok());
}

TEST_CASE("validate_tree flags ordering and V violations") {
  RadialTreeSpec spec = three_generation_spec();
  spec.generations[1].t = 0.5;  // not increasing
  const ValidationReport rep = validate_tree(spec);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& issue : rep.issues)
    if (issue.message.find("strictly increasing") != std::string::npos) found = true;
  CHECK(found);

  RadialTreeSpec bad_v = three_generation_spec();
  bad_v.generations[0].coupling.V.row(0) =
      Eigen::RowVector3cd(1.0, 1.0, 1.0) / std::sqrt(3.0);
  const ValidationReport rep2 = validate_tree(bad_v);
  REQUIRE_FALSE(rep2.ok());
  found = false;
  for (const auto& issue : rep2.issues)
    if (issue.message.find("perpendicular") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("canonical V matches the worked b=3 choice") {
  const Eigen::MatrixXcd v = canonical_v(3);
  Eigen::MatrixXcd expected(2, 3);
  expected << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0,
      1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0);
  CHECK((v - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("vertex matrices: b=2 scalar-U example and block identity") {
  TreeVertexCoupling c = make_vertex_coupling(2, 0.0, 0.0, Complex(0.0, 0.0));
  c.U(0, 0) = 1.0;  // scalar U = 1 makes the transversal block vanish
  const VertexMatrices m = vertex_matrices(c, 2);
  const Eigen::MatrixXcd h = m.A * m.B.adjoint();
  CHECK(h.cwiseAbs().maxCoeff() < 1e-14);  // diag(-alpha, -beta, -i(U-1)(U*+1)) = 0

  // generic parameters: A B* equals the predicted diagonal
  TreeVertexCoupling c2 = make_vertex_coupling(3, 0.8, -0.4, Complex(0.3, 0.6));
  auto g = testutil::rng(5);
  c2.U = testutil::haar_unitary(g, 2);
  const VertexMatrices m2 = vertex_matrices(c2, 3);
  const Eigen::MatrixXcd h2 = m2.A * m2.B.adjoint();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = -0.8;
  expected(1, 1) = 0.4;
  expected.block(2, 2, 2, 2) =
      -Complex(0, 1) * (c2.U - Eigen::MatrixXcd::Identity(2, 2)) *
      (c2.U.adjoint() + Eigen::MatrixXcd::Identity(2, 2));
  CHECK((h2 - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("self-adjointness certificate") {
  auto g = testutil::rng(99);
  for (int b : {2, 3, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      TreeVertexCoupling c = make_vertex_coupling(
          b, testutil::uniform(g, -2.0, 2.0), testutil::uniform(g, -2.0, 2.0),
          testutil::random_complex(g));
      c.U = testutil::haar_unitary(g, b - 1);
      const CertificateReport rep = check_self_adjoint(vertex_matrices(c, b));
      CHECK(rep.pass);
      CHECK(rep.hermiticity_residual < 1e-12);
      CHECK(rep.sigma_min > 1e-10);
    }
  }

  // non-unitary perturbation breaks hermiticity visibly
  TreeVertexCoupling c = make_vertex_coupling(3, 0.5, 0.5, Complex(0.0, 0.0));
  c.U = testutil::haar_unitary(g, 2);
  c.U(0, 1) += 0.1;
  const CertificateReport rep = check_self_adjoint(vertex_matrices(c, 3));
  CHECK(rep.hermiticity_residual > 1e-3);
  CHECK_FALSE(rep.pass);

  // b = 1 chain vertex reduces to the 2x2 GPI certificate
  const TreeVertexCoupling chain = make_vertex_coupling(1, 1.0, -0.5, Complex(0.2, 0.4));
  CHECK(check_self_adjoint(vertex_matrices(chain, 1)).pass);
}

TEST_CASE("eigenphases") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  auto d = eigenphases(id);
  CHECK(d.theta.size() == 2);
  CHECK(d.theta[0] == doctest::Approx(0.0));
  CHECK(d.theta[1] == doctest::Approx(0.0));

  auto dm = eigenphases(-id);
  CHECK(dm.theta[0] == doctest::Approx(M_PI));
  CHECK(dm.theta[1] == doctest::Approx(M_PI));

  Eigen::MatrixXcd sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  auto ds = eigenphases(sx);
  CHECK(ds.theta[0] == doctest::Approx(0.0));
  CHECK(ds.theta[1] == doctest::Approx(M_PI));

  Eigen::MatrixXcd notu(2, 2);
  notu << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(eigenphases(notu), NotUnitary);

  // reconstruction W^{-1} D W = U and spectrum reproduction on random input
  auto g = testutil::rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::MatrixXcd u = testutil::haar_unitary(g, 4);
    const auto dec = eigenphases(u);
    Eigen::MatrixXcd dd = Eigen::MatrixXcd::Zero(4, 4);
    for (int j = 0; j < 4; ++j) dd(j, j) = std::exp(Complex(0, 1) * dec.theta[j]);
    const Eigen::MatrixXcd back = dec.W.inverse() * dd * dec.W;
    CHECK((back - u).cwiseAbs().maxCoeff() < 1e-10);
    for (double th : dec.theta) {
      const Complex lam = std::exp(Complex(0, 1) * th);
      CHECK(std::abs((u - lam * Eigen::MatrixXcd::Identity(4, 4)).determinant()) < 1e-8);
    }
  }
}

TEST_CASE("branching function") {
  const RadialTreeSpec spec = three_generation_spec();
  CHECK(branching_function(spec, 0.5) == 1);
  CHECK(branching_function(spec, 2.0) == 3);
  CHECK(branching_function(spec, 5.0) == 6);
  CHECK(branching_function(spec, 100.0) == 12);
  CHECK_THROWS_AS(branching_function(spec, 1.0), OnVertex);
  CHECK_THROWS_AS(branching_function(spec, -1.0), OutOfRange);

  // nondecreasing across sampled points
  int prev = 1;
  for (double t : {0.2, 0.9, 1.5, 2.9, 3.3, 6.9, 7.5, 20.0}) {
    const int val = branching_function(spec, t);
    CHECK(val >= prev);
    prev = val;
  }
}

TEST_CASE("example W stays unitary at r = 0 and r = 1 edges") {
  for (double r : {0.0, 0.3, 1.0}) {
    const Eigen::Matrix2cd w = example_w(0.2, r);
    CHECK((w * w.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
          1e-14);
  }
  const Eigen::Matrix2cd u = example_u(M_PI / 3, M_PI / 5, 0.2, 0.6);
  const auto dec = eigenphases(u);
  CHECK(dec.theta[0] == doctest::Approx(M_PI / 5).epsilon(1e-12));
  CHECK(dec.theta[1] == doctest::Approx(M_PI / 3).epsilon(1e-12));
}

}  // TEST_SUITE
