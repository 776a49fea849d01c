#pragma once

#include <cmath>
#include <utility>

#include "qalt/numerics.hpp"
#include "qalt/types.hpp"

namespace qalt {

// Complex <-> real dictionary. A state psi in C^N corresponds to the phase
// space point x = (q_1..q_N, p_1..p_N) through psi_k = (q_k + i p_k)/sqrt(2),
// and the Schroedinger flow i dpsi/dt = H psi becomes the linear real flow
// dx/dt = A x. Coordinates are blocked all-q-then-all-p.

inline constexpr double kSqrt2 = 1.4142135623730951;

inline RealVector realify_state(const ComplexVector& psi) {
  const Index n = psi.size();
  RealVector x(2 * n);
  x.head(n) = kSqrt2 * psi.real();
  x.tail(n) = kSqrt2 * psi.imag();
  return x;
}

inline ComplexVector complexify_state(const RealVector& x) {
  if (x.size() % 2 != 0) {
    throw DimensionError("complexify_state: phase-space vector must have even length");
  }
  const Index n = x.size() / 2;
  ComplexVector psi(n);
  psi.real() = x.head(n) / kSqrt2;
  psi.imag() = x.tail(n) / kSqrt2;
  return psi;
}

namespace detail {

inline void require_hermitian(const ComplexMatrix& h, const char* where) {
  require_square(h, where);
  if (hermiticity_residual(h) > kConstructionTol * std::max(1.0, h.norm())) {
    throw std::invalid_argument(std::string(where) + ": matrix is not Hermitean");
  }
}

}  // namespace detail

/// Real generator of the realified Schroedinger flow: with H = H_R + i H_I,
/// psi' = -i H psi  <=>  x' = A x,  A = [[H_I, H_R], [-H_R, H_I]].
inline RealMatrix realify_hamiltonian(const ComplexMatrix& h) {
  detail::require_hermitian(h, "realify_hamiltonian");
  const Index n = h.rows();
  detail::require_desk_scale(2 * n, "realify_hamiltonian");
  const RealMatrix hr = h.real();
  const RealMatrix hi = h.imag();
  RealMatrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = hi;
  a.topRightCorner(n, n) = hr;
  a.bottomLeftCorner(n, n) = -hr;
  a.bottomRightCorner(n, n) = hi;
  return a;
}

/// Symmetric Q with <psi|B|psi> = (1/2) x^T Q x for the realified x.
inline RealMatrix realify_observable(const ComplexMatrix& b) {
  detail::require_hermitian(b, "realify_observable");
  const Index n = b.rows();
  detail::require_desk_scale(2 * n, "realify_observable");
  const RealMatrix br = b.real();
  const RealMatrix bi = b.imag();
  RealMatrix q(2 * n, 2 * n);
  q.topLeftCorner(n, n) = br;
  q.topRightCorner(n, n) = -bi;
  q.bottomLeftCorner(n, n) = bi;
  q.bottomRightCorner(n, n) = br;
  return q;
}

/// Closed-form one-mode trajectory: rotation of (q0, p0) with frequency omega.
/// Conserves the energy omega (q^2 + p^2) / 2.
inline std::pair<double, double> one_level_trajectory(double omega, double q0,
                                                      double p0, double t) {
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {q0 * c + p0 * s, -q0 * s + p0 * c};
}

inline double one_level_energy(double omega, double q, double p) {
  return omega * (q * q + p * p) / 2.0;
}

}  // namespace qalt
