#include "qgs/coupling.hpp"

#include <cmath>

namespace qgs {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Eigen::Matrix2cd GpiCouplingA::matrix() const {
  Eigen::Matrix2cd m;
  m << Complex(alpha), gamma, -std::conj(gamma), Complex(beta);
  return m;
}

Eigen::Matrix2cd GpiCouplingU::matrix() const {
  Eigen::Matrix2cd m;
  m << u1, u2, -std::conj(u2), std::conj(u1);
  return std::exp(kI * xi) * m;
}

GpiCouplingB a_to_b(const GpiCouplingA& c) {
  if (c.beta == 0.0)
    throw DegenerateParametrization(
        "a_to_b: beta = 0 (the B-form does not contain delta-type couplings)");
  const double det = c.det_a();
  GpiCouplingB out;
  out.a = (4.0 + det + 4.0 * c.gamma.real()) / (4.0 * c.beta);
  out.c = Complex(-4.0 + det, -4.0 * c.gamma.imag()) / (4.0 * c.beta);
  out.d = (4.0 + det - 4.0 * c.gamma.real()) / (4.0 * c.beta);
  return out;
}

GpiCouplingA b_to_a(const GpiCouplingB& c) {
  const double den = c.a + c.d - 2.0 * c.c.real();
  if (std::abs(den) < kDegeneracyTol)
    throw DegenerateParametrization("b_to_a: a + d - 2 Re c = 0");
  GpiCouplingA out;
  out.alpha = 4.0 * (c.a * c.d - std::norm(c.c)) / den;
  out.gamma = 4.0 * Complex(0.5 * (c.a - c.d), -c.c.imag()) / den;
  out.beta = 4.0 / den;
  return out;
}

CouplingClass classify(const GpiCouplingA& c, double tol) {
  const double det = c.det_a();
  if (std::abs(det - 4.0) < tol && std::abs(c.gamma.imag()) < tol)
    return CouplingClass::Separating;
  if (std::abs(c.beta) < tol && std::abs(c.gamma) < tol)
    return CouplingClass::Delta;
  if (std::abs(c.alpha) < tol && std::abs(c.gamma) < tol)
    return CouplingClass::DeltaPrime;
  return CouplingClass::Generic;
}

Complex separating_denominator(const GpiCouplingA& c) {
  return Complex(4.0 - c.det_a(), -4.0 * c.gamma.imag());
}

Eigen::Matrix2d jump_numerator(const GpiCouplingA& c) {
  const double det = c.det_a();
  Eigen::Matrix2d n;
  n << 4.0 + det - 4.0 * c.gamma.real(), 4.0 * c.beta,
       4.0 * c.alpha, 4.0 + det + 4.0 * c.gamma.real();
  return n;
}

JumpMatrix jump_matrix(const GpiCouplingA& c) {
  const Complex den = separating_denominator(c);
  if (std::abs(den) < kDegeneracyTol)
    throw SeparatingCoupling("jump_matrix: separating coupling (det A = 4, Im gamma = 0)");
  return JumpMatrix{jump_numerator(c).cast<Complex>() / den};
}

std::array<Eigen::Vector4cd, 2> boundary_basis(const GpiCouplingA& c) {
  // The coupling conditions as a 2x4 system on (y+, y-, y+', y-');
  // self-adjointness makes the null space exactly two-dimensional.
  Eigen::Matrix<Complex, 2, 4> m;
  const Complex g = c.gamma;
  m << Complex(-0.5 * c.alpha), Complex(-0.5 * c.alpha), 1.0 - 0.5 * g, -1.0 - 0.5 * g,
       1.0 + 0.5 * std::conj(g), -1.0 + 0.5 * std::conj(g), Complex(-0.5 * c.beta), Complex(-0.5 * c.beta);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  std::array<Eigen::Vector4cd, 2> basis;
  basis[0] = svd.matrixV().col(2);
  basis[1] = svd.matrixV().col(3);
  return basis;
}

double unitary_relation_residual(const Eigen::Matrix2cd& u,
                                 const Eigen::Vector4cd& q) {
  Eigen::Vector2cd v(q(0), q(1));           // (y+, y-)
  Eigen::Vector2cd w(q(2), -q(3));          // (y+', -y-')
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return ((u - id) * v + kI * (u + id) * w).norm();
}

namespace {

// Split a 2x2 unitary into exp(i xi) * SU(2) with xi in [0, pi).
GpiCouplingU split_unitary(const Eigen::Matrix2cd& u) {
  GpiCouplingU out;
  double half = 0.5 * std::arg(u.determinant());  // in (-pi/2, pi/2]
  if (half < 0.0) half += M_PI;
  out.xi = half;
  const Complex phase = std::exp(-kI * half);
  out.u1 = phase * u(0, 0);
  out.u2 = phase * u(0, 1);
  return out;
}

}  // namespace

GpiCouplingU a_to_unitary(const GpiCouplingA& c) {
  const auto basis = boundary_basis(c);
  const double det = c.det_a();

  // Closed-form candidate (renormalized; the printed normalization is off
  // for e.g. the free coupling, where the raw norm comes out 1/2).
  const double root = std::sqrt(det * det + 4.0 * c.alpha * c.alpha +
                                4.0 * c.beta * c.beta +
                                8.0 * std::norm(c.gamma) + 16.0);
  Complex u1 = Complex(-2.0 * (c.alpha + c.beta), 4.0 * c.gamma.real()) / root;
  Complex u2 = Complex(det - 4.0, -4.0 * c.gamma.imag()) / (2.0 * kI * root);
  const double raw_norm = std::sqrt(std::norm(u1) + std::norm(u2));
  u1 /= raw_norm;
  u2 /= raw_norm;

  // tan(xi) fixes xi modulo pi only; alpha = beta sends it to pi/2.
  double xi;
  if (c.alpha == c.beta) {
    xi = 0.5 * M_PI;
  } else {
    xi = std::atan((det + 4.0) / (2.0 * (c.alpha - c.beta)));
    if (xi < 0.0) xi += M_PI;
  }

  const double tol = 1e-10;
  for (double sign : {1.0, -1.0}) {
    GpiCouplingU cand;
    cand.xi = xi;
    cand.u1 = sign * u1;
    cand.u2 = sign * u2;
    cand.raw_norm = raw_norm;
    cand.norm_warning = std::abs(raw_norm - 1.0) > 1e-9;
    const Eigen::Matrix2cd u = cand.matrix();
    if (unitary_relation_residual(u, basis[0]) < tol &&
        unitary_relation_residual(u, basis[1]) < tol)
      return cand;
  }

  // The printed expressions do not reproduce every coupling (they fail the
  // relation already for a plain delta of strength 2). Rebuild U from the
  // boundary solutions: the relation says U maps v + iw to v - iw, and
  // self-adjointness makes that map unitary.
  Eigen::Matrix2cd x, y;
  for (int j = 0; j < 2; ++j) {
    const Eigen::Vector4cd& q = basis[j];
    Eigen::Vector2cd v(q(0), q(1));
    Eigen::Vector2cd w(q(2), -q(3));
    x.col(j) = v + kI * w;
    y.col(j) = v - kI * w;
  }
  const Eigen::Matrix2cd u = y * x.inverse();
  GpiCouplingU out = split_unitary(u);
  out.raw_norm = raw_norm;
  out.norm_warning = true;
  out.from_closed_form = false;

  const Eigen::Matrix2cd um = out.matrix();
  if (unitary_relation_residual(um, basis[0]) > tol ||
      unitary_relation_residual(um, basis[1]) > tol)
    throw Error("a_to_unitary: constructed unitary fails the coupling relation");
  return out;
}

}  // namespace qgs
