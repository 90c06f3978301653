#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "qgs/coupling.hpp"
#include "qgs/reduction.hpp"
#include "qgs/types.hpp"

namespace qgs {

// Energy z and momentum k with k^2 = z and Im k >= 0. Boundary values on the
// positive real axis are approached as E + i eta with a small caller-supplied
// eta, never as eta = 0 unless the caller asks for it.
struct SpectralParameter {
  Complex z{0.0, 0.0};
  Complex k{0.0, 0.0};

  static SpectralParameter from_z(Complex z);
  static SpectralParameter from_energy(double e, double eta = 1e-6);
  static SpectralParameter from_kappa(double kappa);  // z = -kappa^2, k = i kappa
};

// Free propagator over an interval of length L acting on (y, y'):
// [[cos kL, sin(kL)/k], [-k sin kL, cos kL]], with the k -> 0 limit
// [[1, L], [0, 1]]. det = 1.
Eigen::Matrix2cd interval_transfer(double length, const SpectralParameter& sp);
Eigen::Matrix2cd interval_transfer_inverse(double length,
                                           const SpectralParameter& sp);

struct MValue {
  Complex value{0.0, 0.0};
  bool at_infinity = false;
};

// Weyl m-function m_+(z, t) = f_+'(t)/f_+(t) of the halfline problem with
// finitely many interaction points: exact by transfer-matrix propagation,
// seeding (1, ik) just right of the last point. The root condition plays no
// role in m_+.
MValue mfunction_plus(const HalflineProblem& p, const SpectralParameter& sp,
                      double t);
MValue mfunction_plus(const std::vector<CouplingPoint>& points,
                      const SpectralParameter& sp, double t);

// m_+(z, t) - ik, propagated in the shifted Riccati variable throughout.
// Free of the catastrophic cancellation that makes m_+ + kappa unreadable in
// doubles at large kappa; requires non-separating points.
Complex mfunction_plus_shifted(const std::vector<CouplingPoint>& points,
                               const SpectralParameter& sp, double t);

// Resolvent-series m-function at t = 0:
//   m_+ = ik + sum_{n,m} e^{ik(t_n+t_m)} (1, ik) [(T(z)+B)^{-1}]_{nm} (1, ik)^T,
// an independent route used as an oracle against the transfer engine.
// Requires det A_n != 0 for every point.
MValue mfunction_series(const std::vector<std::pair<double, GpiCouplingA>>& points,
                        const SpectralParameter& sp);

// Large-kappa expansions of m_+(-kappa^2, 0) + kappa for a single point at t1.
// Printed: the tabulated closed-form coefficients verbatim. Corrected: the sign of
// the beta != 0 leading factor and the kappa^{-2} sign of the beta = 0 case repaired to
// match the exact computation (both disagreements are recorded by the tests).
enum class AsymptoticForm { Printed, Corrected };

Complex mfunction_asymptotic_shifted(const HalflineCoupling& c, double t1,
                                     double kappa,
                                     AsymptoticForm form = AsymptoticForm::Corrected);
Complex mfunction_asymptotic(const HalflineCoupling& c, double t1, double kappa,
                             AsymptoticForm form = AsymptoticForm::Corrected);

// Scale 2 kappa e^{-2 kappa t_next} of the first omitted point's contribution
// to m_+(-kappa^2, 0): a heuristic estimate of the truncation error when a
// problem with infinitely many points is cut after the point preceding
// t_next. Not a rigorous bound.
double truncation_tail_scale(double t_next, double kappa);

struct EigenvalueList {
  std::vector<double> values;     // ascending, one entry per eigenvalue
  bool grid_too_coarse = false;   // adjacent roots closer than two panels
};

// Eigenvalues of the problem truncated at cutoff_t with the given boundary
// condition there, found by sign-change bisection of a real secular function
// on `grid` panels over (e_min, e_max). Separating interior points split the
// problem into independent segments whose spectra are merged.
EigenvalueList truncated_eigenvalues(const HalflineProblem& p, double cutoff_t,
                                     const RootCondition& cutoff_bc,
                                     double e_min, double e_max, int grid);

struct WeylDisc {
  Complex center{0.0, 0.0};
  double radius = 0.0;

  bool contains(Complex m, double slack = 1e-10) const {
    return std::abs(m - center) <= radius + slack;
  }
};

// Nested-disc localization of m_+(z, start) from a Robin family at the right
// endpoint b: u, v propagate the initial data (1,0), (0,1) from p.start.
WeylDisc weyl_disc(const HalflineProblem& p, const SpectralParameter& sp,
                   double b);

}  // namespace qgs
