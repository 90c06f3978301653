#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qgs {

using Complex = std::complex<double>;

// Absolute tolerance used for degeneracy tests on O(1)-scaled quantities
// (separating couplings, vanishing denominators).
inline constexpr double kDegeneracyTol = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The B-form (and other parametrizations with restricted domain) does not
// cover the requested coupling.
struct DegenerateParametrization : Error { using Error::Error; };

// Coupling with det A = 4, Im gamma = 0: the two sides decouple and no jump
// matrix exists.
struct SeparatingCoupling : Error { using Error::Error; };

struct DimensionMismatch : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct OnVertex : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// Reduction denominator vanishes outside the two catalogued special branches.
struct UnhandledDegenerate : Error { using Error::Error; };

// Evaluation point coincides with an interaction point.
struct NonMaximalDomain : Error { using Error::Error; };

// T(z)+B numerically singular in the resolvent-series m-function.
struct SingularTB : Error { using Error::Error; };

// B-matrix of the resolvent series undefined (det A_n = 0).
struct ZeroDetA : Error { using Error::Error; };

// Measure sets with different weight counts cannot be compared.
struct RegimeMismatch : Error { using Error::Error; };

struct InsufficientGenerations : Error { using Error::Error; };

}  // namespace qgs
