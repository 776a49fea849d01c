#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "qalt/numerics.hpp"
#include "qalt/types.hpp"

namespace qalt {

// Kinematic structures on the realified phase space R^{2N}: a Poisson tensor
// C ({x_i, x_j} = c_ij), its inverse symplectic form, a complex structure J,
// and the metric s = CJ whose positivity makes the pair a Hilbert-space
// structure h = s + i*Omega.

struct PoissonTensor {
  RealMatrix c;

  static PoissonTensor make(RealMatrix c_in) {
    detail::require_square(c_in, "PoissonTensor");
    detail::require_desk_scale(c_in.rows(), "PoissonTensor");
    const double scale = std::max(1.0, c_in.norm());
    if (antisymmetry_residual(c_in) > kConstructionTol * scale) {
      throw IncompatibleStructureError("PoissonTensor: matrix is not antisymmetric");
    }
    PoissonTensor p{std::move(c_in)};
    return p;
  }

  Index dim() const { return c.rows(); }
};

struct SymplecticForm {
  RealMatrix omega;

  Index dim() const { return omega.rows(); }
};

struct ComplexStructure {
  RealMatrix j;

  static ComplexStructure make(RealMatrix j_in) {
    detail::require_square(j_in, "ComplexStructure");
    const Index n = j_in.rows();
    const double res = (j_in * j_in + RealMatrix::Identity(n, n)).norm();
    if (res > kConstructionTol * std::max(1.0, j_in.squaredNorm())) {
      throw IncompatibleStructureError(
          "ComplexStructure: J^2 != -identity (residual " + std::to_string(res) + ")");
    }
    ComplexStructure s{std::move(j_in)};
    return s;
  }

  Index dim() const { return j.rows(); }
};

/// Omega = C^{-1}, antisymmetrized to kill roundoff.
inline SymplecticForm symplectic_from_poisson(const PoissonTensor& c) {
  RealMatrix omega = solve_or_invert(c.c);
  omega = ((omega - omega.transpose()) / 2.0).eval();
  return SymplecticForm{std::move(omega)};
}

/// One quantum description: compatible (C, J) with metric s = CJ and the
/// Hermitean form h(x, y) = x^T s y + i x^T Omega y.
struct StructureTriple {
  PoissonTensor c;
  ComplexStructure j;
  RealMatrix s;
  SymplecticForm omega;

  Index dim() const { return c.dim(); }

  Complex hermitean_form(const RealVector& x, const RealVector& y) const {
    return Complex(x.dot(s * y), x.dot(omega.omega * y));
  }
};

/// Builds the triple (C, J, s = CJ); fails naming the first violated
/// compatibility predicate (symmetry of s, then positivity).
inline StructureTriple assemble_triple(PoissonTensor c, ComplexStructure j) {
  if (c.dim() != j.dim()) {
    throw DimensionError("assemble_triple: C and J dimensions differ");
  }
  RealMatrix s = c.c * j.j;
  const double scale = std::max(1.0, s.norm());
  if (symmetry_residual(s) > 1e-9 * scale) {
    throw IncompatibleStructureError("assemble_triple: s = CJ is not symmetric");
  }
  s = ((s + s.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(s, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= kConstructionTol) {
    throw IncompatibleStructureError("assemble_triple: s = CJ is not positive definite");
  }
  SymplecticForm omega = symplectic_from_poisson(c);
  return StructureTriple{std::move(c), std::move(j), std::move(s), std::move(omega)};
}

/// Canonical triple in the q-then-p block convention:
/// C0 = [[0, I], [-I, 0]], J0 = [[0, -I], [I, 0]], s0 = identity.
inline StructureTriple standard_triple(Index n_modes) {
  if (n_modes < 1) throw DimensionError("standard_triple: need N >= 1");
  detail::require_desk_scale(2 * n_modes, "standard_triple");
  const Index n = n_modes;
  RealMatrix c0 = RealMatrix::Zero(2 * n, 2 * n);
  c0.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  c0.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return assemble_triple(PoissonTensor::make(c0), ComplexStructure::make(-c0));
}

/// Quadratic observable f(x) = (1/2) x^T Q x with symmetric Q.
struct QuadraticObservable {
  RealMatrix q;

  static QuadraticObservable make(RealMatrix q_in) {
    detail::require_square(q_in, "QuadraticObservable");
    if (symmetry_residual(q_in) > kConstructionTol * std::max(1.0, q_in.norm())) {
      throw IncompatibleStructureError("QuadraticObservable: matrix is not symmetric");
    }
    q_in = ((q_in + q_in.transpose()) / 2.0).eval();
    return QuadraticObservable{std::move(q_in)};
  }

  double value(const RealVector& x) const { return 0.5 * x.dot(q * x); }

  RealVector gradient(const RealVector& x) const { return q * x; }
};

/// Lie product on quadratic-form matrices induced by the Poisson tensor:
/// [B1, B2]_C = B1 C B2 - B2 C B1.
inline RealMatrix lie_product(const RealMatrix& b1, const RealMatrix& b2,
                              const PoissonTensor& c) {
  if (b1.rows() != c.dim() || b1.cols() != c.dim() || b2.rows() != c.dim() ||
      b2.cols() != c.dim()) {
    throw DimensionError("lie_product: operand dimensions do not match the Poisson tensor");
  }
  return b1 * c.c * b2 - b2 * c.c * b1;
}

/// {f, g}_C as a quadratic observable; its matrix is the C-Lie product of
/// the operand matrices (symmetric already, symmetrized for roundoff).
inline QuadraticObservable poisson_bracket(const QuadraticObservable& f,
                                           const QuadraticObservable& g,
                                           const PoissonTensor& c) {
  RealMatrix m = lie_product(f.q, g.q, c);
  return QuadraticObservable::make(((m + m.transpose()) / 2.0).eval());
}

/// Pointwise bracket value from the gradients, {f, g}(x) = grad f . C grad g;
/// the independent route used to cross-check the matrix form.
inline double poisson_bracket_at(const QuadraticObservable& f,
                                 const QuadraticObservable& g,
                                 const PoissonTensor& c, const RealVector& x) {
  const RealVector gf = f.gradient(x);
  const RealVector gg = g.gradient(x);
  return 0.5 * (gf.dot(c.c * gg) - gg.dot(c.c * gf));
}

}  // namespace qalt
