#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qalt/numerics.hpp"
#include "qalt/types.hpp"

namespace qalt {

// Deformed operator algebra: the associative product A ._K B = A e^{lambda K} B,
// its Lie bracket, the intertwiner F_K(A) = e^{lambda K/2} A e^{lambda K/2},
// and the deformed scalar product <.|.>_K = <.|e^{lambda K}|.>.

template <typename Scalar>
struct DeformationOperator {
  Matrix<Scalar> k;
  double lambda = 0.0;
  Matrix<Scalar> exp_full;  // e^{lambda K}
  Matrix<Scalar> exp_half;  // e^{lambda K / 2}

  static DeformationOperator make(Matrix<Scalar> k_in, double lambda_in) {
    detail::require_square(k_in, "DeformationOperator");
    detail::require_desk_scale(k_in.rows(), "DeformationOperator");
    if (hermiticity_residual(k_in) > kConstructionTol * std::max(1.0, k_in.norm())) {
      throw std::invalid_argument(
          "DeformationOperator: K must be Hermitean w.r.t. the reference product");
    }
    DeformationOperator d;
    d.k = std::move(k_in);
    d.lambda = lambda_in;
    d.exp_full = exp_selfadjoint(d.k, lambda_in);
    d.exp_half = exp_selfadjoint(d.k, lambda_in / 2.0);
    return d;
  }

  /// K given as a diagonal function table on a preferred basis (the Fock case).
  static DeformationOperator from_diagonal(const std::vector<double>& k_values,
                                           double lambda_in) {
    const Index n = static_cast<Index>(k_values.size());
    Matrix<Scalar> k = Matrix<Scalar>::Zero(n, n);
    for (Index i = 0; i < n; ++i) k(i, i) = Scalar(k_values[static_cast<size_t>(i)]);
    return make(std::move(k), lambda_in);
  }

  Index dim() const { return k.rows(); }
};

using RealDeformation = DeformationOperator<double>;
using ComplexDeformation = DeformationOperator<Complex>;

namespace detail {

template <typename Scalar>
void require_deform_dims(const Matrix<Scalar>& a, const DeformationOperator<Scalar>& d,
                         const char* where) {
  if (a.rows() != d.dim() || a.cols() != d.dim()) {
    throw DimensionError(std::string(where) + ": operand does not match deformation dimension");
  }
}

}  // namespace detail

/// A ._K B = A e^{lambda K} B. Associative and distributive.
template <typename Scalar>
Matrix<Scalar> kproduct(const Matrix<Scalar>& a, const Matrix<Scalar>& b,
                        const DeformationOperator<Scalar>& d) {
  detail::require_deform_dims(a, d, "kproduct");
  detail::require_deform_dims(b, d, "kproduct");
  return a * d.exp_full * b;
}

/// [A, B]_K = A e^{lambda K} B - B e^{lambda K} A.
template <typename Scalar>
Matrix<Scalar> kbracket(const Matrix<Scalar>& a, const Matrix<Scalar>& b,
                        const DeformationOperator<Scalar>& d) {
  detail::require_deform_dims(a, d, "kbracket");
  detail::require_deform_dims(b, d, "kbracket");
  const Matrix<Scalar> ab = a * d.exp_full * b;
  const Matrix<Scalar> ba = b * d.exp_full * a;
  return ab - ba;
}

/// F_K(A) = e^{lambda K/2} A e^{lambda K/2}; an isomorphism from the deformed
/// products onto the ordinary ones, inverted by F_{-K}.
template <typename Scalar>
Matrix<Scalar> fk_map(const Matrix<Scalar>& a, const DeformationOperator<Scalar>& d) {
  detail::require_deform_dims(a, d, "fk_map");
  return d.exp_half * a * d.exp_half;
}

/// <psi1|psi2>_K = <psi1|e^{lambda K}|psi2>; Hermitean and positive definite.
template <typename Scalar>
Complex kscalar(const ComplexVector& psi1, const ComplexVector& psi2,
                const DeformationOperator<Scalar>& d) {
  if (psi1.size() != d.dim() || psi2.size() != d.dim()) {
    throw DimensionError("kscalar: state length does not match deformation dimension");
  }
  const ComplexMatrix g = d.exp_full.template cast<Complex>();
  return psi1.dot(g * psi2);
}

/// Expectation of A in the K-structure: the state enters through the isometry
/// psi -> e^{lambda K/2} psi onto the reference space, so this equals
/// <psi|F_K(A)|psi> evaluated in the reference product.
template <typename Scalar>
Complex kexpectation(const ComplexMatrix& a, const ComplexVector& psi,
                     const DeformationOperator<Scalar>& d) {
  if (a.rows() != d.dim() || psi.size() != d.dim()) {
    throw DimensionError("kexpectation: dimension mismatch");
  }
  const ComplexVector eta = d.exp_half.template cast<Complex>() * psi;
  return eta.dot(a * eta);
}

/// ||[K, H]|| <= tol: K generates admissible alternative structures for the
/// dynamics of H.
template <typename Scalar>
bool is_constant_of_motion(const Matrix<Scalar>& k, const Matrix<Scalar>& h,
                           double tol = kIdentityTol) {
  if (k.rows() != h.rows() || k.cols() != h.cols()) {
    throw DimensionError("is_constant_of_motion: dimension mismatch");
  }
  return (k * h - h * k).norm() <= tol;
}

}  // namespace qalt
