#pragma once

#include <random>

#include "qalt/types.hpp"

namespace qalt {

// Deterministic generators for the randomized verification suites.
// All draws use uniform distributions on a seeded mt19937_64 so a given
// seed reproduces the same instance stream on a given platform.

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline RealMatrix random_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  RealMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = scale * uniform(rng);
  return m;
}

inline RealMatrix random_symmetric(Rng& rng, Index n, double scale = 1.0) {
  RealMatrix m = random_matrix(rng, n, n, scale);
  return ((m + m.transpose()) / 2.0).eval();
}

inline RealMatrix random_antisymmetric(Rng& rng, Index n, double scale = 1.0) {
  RealMatrix m = random_matrix(rng, n, n, scale);
  return ((m - m.transpose()) / 2.0).eval();
}

inline ComplexMatrix random_complex_matrix(Rng& rng, Index rows, Index cols,
                                           double scale = 1.0) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = scale * Complex(uniform(rng), uniform(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, Index n, double scale = 1.0) {
  ComplexMatrix m = random_complex_matrix(rng, n, n, scale);
  return ((m + m.adjoint()) / 2.0).eval();
}

inline ComplexVector random_state(Rng& rng, Index n) {
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex(uniform(rng), uniform(rng));
  const double norm = v.norm();
  if (norm > 0) v /= norm;
  return v;
}

inline RealMatrix random_orthogonal(Rng& rng, Index n) {
  const RealMatrix m = random_matrix(rng, n, n);
  Eigen::HouseholderQR<RealMatrix> qr(m);
  RealMatrix q = qr.householderQ();
  // Fix the sign ambiguity so the draw is a function of the stream alone.
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

// Invertible with singular values in [0.5, 2]: safely away from the
// condition limit regardless of dimension.
inline RealMatrix random_invertible(Rng& rng, Index n) {
  const RealMatrix q1 = random_orthogonal(rng, n);
  const RealMatrix q2 = random_orthogonal(rng, n);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) d[i] = uniform(rng, 0.5, 2.0);
  return q1 * d.asDiagonal() * q2;
}

}  // namespace qalt
