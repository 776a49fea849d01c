#pragma once

#include <cmath>
#include <string>

#include "qalt/numerics.hpp"
#include "qalt/structures.hpp"
#include "qalt/types.hpp"

namespace qalt {

// The dynamics layer: decomposition A = HC of a linear generator into a
// symmetric Hamiltonian matrix times the Poisson tensor, invariance of the
// kinematic structures under the flow, and evolution in the three pictures.

struct InvarianceReport {
  bool symplectic_ok = false;
  bool complex_ok = false;
  bool metric_ok = false;
  double symplectic_residual = 0.0;
  double complex_residual = 0.0;
  double metric_residual = 0.0;

  bool all_ok() const { return symplectic_ok && complex_ok && metric_ok; }
};

/// H = A C^{-1}, checked symmetric; f_H(x) = (1/2) x^T H x generates A.
inline RealMatrix decompose_hamiltonian(const RealMatrix& a, const PoissonTensor& c) {
  detail::require_square(a, "decompose_hamiltonian");
  if (a.rows() != c.dim()) {
    throw DimensionError("decompose_hamiltonian: A and C dimensions differ");
  }
  const RealMatrix h = a * solve_or_invert(c.c);
  const double scale = std::max(1.0, h.norm());
  if (symmetry_residual(h) > 1e-9 * scale) {
    throw NotHamiltonianError(
        "decompose_hamiltonian: A C^{-1} is not symmetric; A is not Hamiltonian "
        "w.r.t. this Poisson tensor");
  }
  return ((h + h.transpose()) / 2.0).eval();
}

/// Lie-derivative residuals of the three structures along x' = Ax:
///   symplectic  A^T Omega + Omega A,
///   complex     A J - J A,
///   metric      A^T s + s A.
inline InvarianceReport check_invariance(const RealMatrix& a,
                                         const StructureTriple& triple,
                                         double tol = kIdentityTol) {
  detail::require_square(a, "check_invariance");
  if (a.rows() != triple.dim()) {
    throw DimensionError("check_invariance: A and triple dimensions differ");
  }
  InvarianceReport r;
  r.symplectic_residual =
      (a.transpose() * triple.omega.omega + triple.omega.omega * a).norm();
  r.complex_residual = (a * triple.j.j - triple.j.j * a).norm();
  r.metric_residual = (a.transpose() * triple.s + triple.s * a).norm();
  r.symplectic_ok = r.symplectic_residual <= tol;
  r.complex_ok = r.complex_residual <= tol;
  r.metric_ok = r.metric_residual <= tol;
  return r;
}

/// x(t) = exp(tA) x0.
inline RealVector evolve_schrodinger(const RealMatrix& a, const RealVector& x0,
                                     double t) {
  detail::require_square(a, "evolve_schrodinger");
  if (a.rows() != x0.size()) {
    throw DimensionError("evolve_schrodinger: state length does not match A");
  }
  return mat_exp((t * a).eval()) * x0;
}

inline ComplexVector evolve_state(const ComplexMatrix& h, const ComplexVector& psi0,
                                  double t) {
  return propagator(h, t) * psi0;
}

/// Operator evolution B(t) = U^dag B U with U = exp(-iHt); solves
/// i dB/dt = [B, H] and preserves the spectrum of B.
inline ComplexMatrix evolve_heisenberg(const ComplexMatrix& h, const ComplexMatrix& b,
                                       double t) {
  detail::require_square(b, "evolve_heisenberg");
  if (b.rows() != h.rows()) {
    throw DimensionError("evolve_heisenberg: B and H dimensions differ");
  }
  const ComplexMatrix u = propagator(h, t);
  return u.adjoint() * b * u;
}

struct EhrenfestResult {
  bool ok = false;
  double residual = 0.0;
};

/// Picture agreement: <psi(t)|B|psi(t)> computed in the Schroedinger picture
/// against <psi0|B(t)|psi0> computed in the Heisenberg picture.
inline EhrenfestResult ehrenfest_check(const ComplexMatrix& h, const ComplexMatrix& b,
                                       const ComplexVector& psi0, double t,
                                       double tol = kEvolutionTol) {
  const ComplexVector psi_t = evolve_state(h, psi0, t);
  const Complex lhs = psi_t.dot(b * psi_t);
  const ComplexMatrix b_t = evolve_heisenberg(h, b, t);
  const Complex rhs = psi0.dot(b_t * psi0);
  const double residual = std::abs(lhs - rhs);
  return EhrenfestResult{residual <= tol, residual};
}

}  // namespace qalt
