#include <doctest.h>

#include "qgs/coupling.hpp"
#include "test_util.hpp"

using namespace qgs;

TEST_SUITE("coupling") {

TEST_CASE("a_to_b on the delta-prime family") {
  const GpiCouplingB b1 = a_to_b({0.0, 2.0, {0.0, 0.0}});
  CHECK(b1.a == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(b1.c.real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(b1.c.imag() == 0.0);
  CHECK(b1.d == doctest::Approx(0.5).epsilon(1e-14));

  const GpiCouplingB b2 = a_to_b({0.0, 1.0, {0.0, 0.0}});
  CHECK(b2.a == doctest::Approx(1.0));
  CHECK(b2.c.real() == doctest::Approx(-1.0));
  CHECK(b2.d == doctest::Approx(1.0));

  CHECK_THROWS_AS(a_to_b({1.0, 0.0, {0.0, 0.0}}), DegenerateParametrization);
}

TEST_CASE("b_to_a hand values and degenerate denominator") {
  const GpiCouplingA a = b_to_a({0.5, 0.5, {-0.5, 0.0}});
  CHECK(a.alpha == doctest::Approx(0.0));
  CHECK(a.beta == doctest::Approx(2.0));
  CHECK(std::abs(a.gamma) < 1e-14);

  CHECK_THROWS_AS(b_to_a({1.0, 1.0, {1.0, 0.0}}), DegenerateParametrization);
}

TEST_CASE("round trips on both domains") {
  auto g = testutil::rng(12345);
  for (int i = 0; i < 300; ++i) {
    const GpiCouplingA c = testutil::random_coupling_beta(g);
    const GpiCouplingA back = b_to_a(a_to_b(c));
    CHECK(std::abs(back.alpha - c.alpha) < 1e-12);
    CHECK(std::abs(back.beta - c.beta) < 1e-12);
    CHECK(std::abs(back.gamma - c.gamma) < 1e-12);

    GpiCouplingB bf;
    bf.a = testutil::uniform(g, -2.0, 2.0);
    bf.d = testutil::uniform(g, -2.0, 2.0);
    bf.c = testutil::random_complex(g);
    if (std::abs(bf.a + bf.d - 2.0 * bf.c.real()) < 0.1) continue;
    const GpiCouplingB fwd = a_to_b(b_to_a(bf));
    CHECK(std::abs(fwd.a - bf.a) < 1e-12);
    CHECK(std::abs(fwd.d - bf.d) < 1e-12);
    CHECK(std::abs(fwd.c - bf.c) < 1e-12);
  }
}

TEST_CASE("classification") {
  CHECK(classify({3.0, 0.0, {0.0, 0.0}}) == CouplingClass::Delta);
  CHECK(classify({0.0, 0.0, {2.0, 0.0}}) == CouplingClass::Separating);
  CHECK(classify({1.0, 1.0, {0.0, 1.0}}) == CouplingClass::Generic);
  CHECK(classify({0.0, 0.5, {0.0, 0.0}}) == CouplingClass::DeltaPrime);
  // free coupling is a delta of strength zero
  CHECK(classify({0.0, 0.0, {0.0, 0.0}}) == CouplingClass::Delta);

  // Delta implies no B-form; DeltaPrime converts with a = d = 1/beta, c = -1/beta
  CHECK_THROWS_AS(a_to_b({3.0, 0.0, {0.0, 0.0}}), DegenerateParametrization);
  const GpiCouplingB b = a_to_b({0.0, 0.5, {0.0, 0.0}});
  CHECK(b.a == doctest::Approx(2.0));
  CHECK(b.d == doctest::Approx(2.0));
  CHECK(b.c.real() == doctest::Approx(-2.0));
}

TEST_CASE("jump matrix closed forms") {
  const Eigen::Matrix2cd id = jump_matrix({0.0, 0.0, {0.0, 0.0}}).m;
  CHECK((id - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  const Eigen::Matrix2cd dp = jump_matrix({0.0, 0.7, {0.0, 0.0}}).m;
  CHECK(std::abs(dp(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(dp(0, 1) - 0.7) < 1e-15);
  CHECK(std::abs(dp(1, 0)) < 1e-15);
  CHECK(std::abs(dp(1, 1) - 1.0) < 1e-15);

  const Eigen::Matrix2cd dg = jump_matrix({0.0, 0.0, {2.0 / 3.0, 0.0}}).m;
  CHECK(std::abs(dg(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(dg(1, 1) - 2.0) < 1e-14);
  CHECK(std::abs(dg(0, 1)) < 1e-15);

  CHECK_THROWS_AS(jump_matrix({0.0, 0.0, {2.0, 0.0}}), SeparatingCoupling);
}

TEST_CASE("jump determinant and Wronskian preservation") {
  auto g = testutil::rng(777);
  for (int i = 0; i < 200; ++i) {
    GpiCouplingA c;
    c.alpha = testutil::uniform(g, -2.0, 2.0);
    c.beta = testutil::uniform(g, -2.0, 2.0);
    c.gamma = testutil::random_complex(g);
    if (std::abs(separating_denominator(c)) < 0.1) continue;
    const Eigen::Matrix2cd m = jump_matrix(c).m;
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    CHECK(std::abs(std::abs(det) - 1.0) < 1e-12);
    if (std::abs(c.gamma.imag()) < 1e-15) CHECK(std::abs(det - 1.0) < 1e-12);

    const Eigen::Vector2cd y(testutil::random_complex(g), testutil::random_complex(g));
    const Eigen::Vector2cd w(testutil::random_complex(g), testutil::random_complex(g));
    const Complex before = y(0) * w(1) - y(1) * w(0);
    const Eigen::Vector2cd my = m * y, mw = m * w;
    const Complex after = my(0) * mw(1) - my(1) * mw(0);
    CHECK(std::abs(std::abs(before) - std::abs(after)) < 1e-12);
  }
}

TEST_CASE("unitary form satisfies the coupling relation") {
  SUBCASE("free coupling identifies values and derivatives") {
    const GpiCouplingU u = a_to_unitary({0.0, 0.0, {0.0, 0.0}});
    Eigen::Vector4cd q;
    q << 1.0, 1.0, 0.3, 0.3;  // y+ = y-, y+' = y-'
    CHECK(unitary_relation_residual(u.matrix(), q) < 1e-12);
    CHECK(u.norm_warning);  // printed norm is 1/2 here
  }

  SUBCASE("delta of strength 2, against the directly solved unitary") {
    const GpiCouplingA c{2.0, 0.0, {0.0, 0.0}};
    const GpiCouplingU u = a_to_unitary(c);
    for (const auto& q : boundary_basis(c))
      CHECK(unitary_relation_residual(u.matrix(), q) < 1e-10);
    // oracle: solve U (v + iw) = v - iw from the two boundary solutions
    Eigen::Matrix2cd x, y;
    int col = 0;
    for (const auto& q : boundary_basis(c)) {
      const Eigen::Vector2cd v(q(0), q(1)), w(q(2), -q(3));
      x.col(col) = v + Complex(0, 1) * w;
      y.col(col) = v - Complex(0, 1) * w;
      ++col;
    }
    const Eigen::Matrix2cd direct = y * x.inverse();
    CHECK((u.matrix() - direct).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(u.xi == doctest::Approx(M_PI / 4).epsilon(1e-12));
  }

  SUBCASE("normalization and unitarity across random couplings") {
    auto g = testutil::rng(424242);
    for (int i = 0; i < 100; ++i) {
      GpiCouplingA c;
      c.alpha = testutil::uniform(g, -3.0, 3.0);
      c.beta = testutil::uniform(g, -3.0, 3.0);
      c.gamma = testutil::random_complex(g, 1.5);
      const GpiCouplingU u = a_to_unitary(c);
      CHECK(std::abs(std::norm(u.u1) + std::norm(u.u2) - 1.0) < 1e-12);
      const Eigen::Matrix2cd m = u.matrix();
      CHECK((m * m.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK(u.xi >= 0.0);
      CHECK(u.xi < M_PI);
      for (const auto& q : boundary_basis(c))
        CHECK(unitary_relation_residual(m, q) < 1e-10);
    }
  }
}

}  // TEST_SUITE
