#pragma once

#include <array>
#include <cmath>
#include <string>

#include "qalt/types.hpp"

namespace qalt {

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* where) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(where) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

inline void require_desk_scale(Index dim, const char* where) {
  if (dim > kMaxPhaseDim) {
    throw DimensionError(std::string(where) + ": dimension " + std::to_string(dim) +
                         " exceeds the supported cap of " + std::to_string(kMaxPhaseDim));
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* where) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(where) + ": matrix has non-finite entries");
  }
}

// Max absolute column sum.
template <typename Derived>
double one_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace detail

inline double symmetry_residual(const RealMatrix& m) {
  return (m - m.transpose()).norm();
}

template <typename Scalar>
double hermiticity_residual(const Matrix<Scalar>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Scalar>
double antisymmetry_residual(const Matrix<Scalar>& m) {
  return (m + m.transpose()).norm();
}

/// Matrix exponential by scaling and squaring around a degree-13 Pade core.
template <typename Derived>
Matrix<typename Derived::Scalar> mat_exp(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Mat = Matrix<Scalar>;

  detail::require_square(m, "mat_exp");
  detail::require_desk_scale(m.rows(), "mat_exp");
  detail::require_finite(m, "mat_exp");

  const Index n = m.rows();
  const Mat id = Mat::Identity(n, n);

  // Pade(13,13) numerator coefficients; theta is the 1-norm bound under which
  // the approximant stays at double-precision accuracy.
  constexpr double theta13 = 5.371920351148152;
  constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  const double norm = detail::one_norm(m);
  int squarings = 0;
  if (norm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  }

  const Mat a = m.derived() / std::pow(2.0, squarings);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a2 * a4;

  const Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                     b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    r = r * r;
  }
  return r;
}

/// exp(factor * K) for selfadjoint K through its spectral decomposition.
/// The result is exactly Hermitean and positive definite for real factor.
template <typename Scalar>
Matrix<Scalar> exp_selfadjoint(const Matrix<Scalar>& k, double factor) {
  detail::require_square(k, "exp_selfadjoint");
  if (hermiticity_residual(k) > kConstructionTol * std::max(1.0, k.norm())) {
    throw std::invalid_argument("exp_selfadjoint: matrix is not Hermitean");
  }
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(k);
  const RealVector lam = es.eigenvalues();
  RealVector explam(lam.size());
  for (Index i = 0; i < lam.size(); ++i) explam[i] = std::exp(factor * lam[i]);
  Matrix<Scalar> r = es.eigenvectors() * explam.asDiagonal() *
                     es.eigenvectors().adjoint();
  return r;
}

/// exp(-i H t) for Hermitean H, via the spectral theorem.
inline ComplexMatrix propagator(const ComplexMatrix& h, double t) {
  detail::require_square(h, "propagator");
  if (hermiticity_residual(h) > kConstructionTol * std::max(1.0, h.norm())) {
    throw std::invalid_argument("propagator: Hamiltonian is not Hermitean");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector lam = es.eigenvalues();
  ComplexVector phase(lam.size());
  for (Index i = 0; i < lam.size(); ++i) {
    phase[i] = std::exp(Complex(0.0, -lam[i] * t));
  }
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

/// True iff S is symmetric within tol and all its eigenvalues exceed tol.
inline bool is_positive_definite(const RealMatrix& s, double tol) {
  detail::require_square(s, "is_positive_definite");
  detail::require_desk_scale(s.rows(), "is_positive_definite");
  if (symmetry_residual(s) > tol) return false;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es((s + s.transpose()) / 2.0,
                                               Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol;
}

/// Inverse of a square matrix; rejects inputs whose 1-norm condition
/// estimate exceeds kConditionLimit.
template <typename Scalar>
Matrix<Scalar> solve_or_invert(const Matrix<Scalar>& m) {
  detail::require_square(m, "solve_or_invert");
  detail::require_desk_scale(m.rows(), "solve_or_invert");
  detail::require_finite(m, "solve_or_invert");

  Eigen::FullPivLU<Matrix<Scalar>> lu(m);
  if (!lu.isInvertible()) {
    throw SingularMatrixError("solve_or_invert: matrix is singular (rank " +
                              std::to_string(lu.rank()) + " of " +
                              std::to_string(m.rows()) + ")");
  }
  Matrix<Scalar> inv = lu.inverse();
  const double cond = detail::one_norm(m) * detail::one_norm(inv);
  if (!std::isfinite(cond) || cond > kConditionLimit) {
    throw SingularMatrixError(
        "solve_or_invert: condition estimate " + std::to_string(cond) +
        " exceeds " + std::to_string(kConditionLimit));
  }
  return inv;
}

}  // namespace qalt
