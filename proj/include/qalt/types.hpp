#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qalt {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using RealVector = Vector<double>;
using ComplexVector = Vector<Complex>;

using Index = Eigen::Index;

// Desk-scale caps: phase spaces stop at 2N = 128, Fock truncations at D = 64.
inline constexpr Index kMaxPhaseDim = 128;
inline constexpr Index kMaxFockDim = 64;

// Tolerance ladder: construction checks, derived identities, time evolution.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kEvolutionTol = 1e-8;

// Condition estimates beyond this are treated as singular.
inline constexpr double kConditionLimit = 1e14;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structure assembly failed; `what()` names the first failed predicate.
struct IncompatibleStructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A = HC decomposition produced a non-symmetric H for the given pair (A, C).
struct NotHamiltonianError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PositivityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qalt
