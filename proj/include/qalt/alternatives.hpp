#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qalt/dynamics.hpp"
#include "qalt/numerics.hpp"
#include "qalt/structures.hpp"
#include "qalt/types.hpp"

namespace qalt {

// Symmetries T of a generator A (T^{-1} A T = A) and the transport of a
// compatible triple along them. A non-unitary symmetry carries the standard
// description into a genuinely different one preserved by the same dynamics.

struct SymmetryTransformation {
  RealMatrix t;
  // Provenance: exponent k for T = A^k, or -1 for a user-supplied matrix.
  int power = -1;

  static SymmetryTransformation from_power(const RealMatrix& a, int k);
  static SymmetryTransformation user(RealMatrix t, const RealMatrix& a);

  bool from_powers() const { return power >= 0; }
};

namespace detail {

inline double symmetry_defect(const RealMatrix& t, const RealMatrix& a) {
  const RealMatrix tinv = solve_or_invert(t);
  return (tinv * a * t - a).norm() / std::max(1.0, a.norm());
}

}  // namespace detail

inline SymmetryTransformation SymmetryTransformation::from_power(const RealMatrix& a,
                                                                 int k) {
  detail::require_square(a, "SymmetryTransformation");
  if (k < 0) throw std::invalid_argument("SymmetryTransformation: power must be >= 0");
  RealMatrix t = RealMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) t = (t * a).eval();
  solve_or_invert(t);  // rejects singular powers
  return SymmetryTransformation{std::move(t), k};
}

inline SymmetryTransformation SymmetryTransformation::user(RealMatrix t,
                                                           const RealMatrix& a) {
  detail::require_square(t, "SymmetryTransformation");
  if (t.rows() != a.rows()) {
    throw DimensionError("SymmetryTransformation: T and A dimensions differ");
  }
  if (detail::symmetry_defect(t, a) > 1e-9) {
    throw std::invalid_argument("SymmetryTransformation: T is not a symmetry of A");
  }
  return SymmetryTransformation{std::move(t), -1};
}

struct SymmetryPowers {
  std::vector<SymmetryTransformation> transforms;
  std::vector<int> skipped;  // powers excluded as numerically singular
};

/// A^0 .. A^max_power; powers whose condition estimate blows up are skipped,
/// not fatal. Requires max_power <= 2 * dim(A).
inline SymmetryPowers symmetry_powers(const RealMatrix& a, int max_power) {
  detail::require_square(a, "symmetry_powers");
  if (max_power < 0 || max_power > 2 * a.rows()) {
    throw std::invalid_argument("symmetry_powers: max_power must lie in [0, 2*dim]");
  }
  SymmetryPowers out;
  for (int k = 0; k <= max_power; ++k) {
    try {
      out.transforms.push_back(SymmetryTransformation::from_power(a, k));
    } catch (const SingularMatrixError&) {
      out.skipped.push_back(k);
    }
  }
  return out;
}

/// True iff T preserves the Hermitean structure: T^T s T = s and
/// T^T Omega T = Omega, residuals taken relative to the structure norms.
inline bool is_unitary_wrt(const SymmetryTransformation& t, const StructureTriple& triple,
                           double tol = kIdentityTol) {
  const RealMatrix& s = triple.s;
  const RealMatrix& omega = triple.omega.omega;
  const double rs = (t.t.transpose() * s * t.t - s).norm() / std::max(1.0, s.norm());
  const double rw =
      (t.t.transpose() * omega * t.t - omega).norm() / std::max(1.0, omega.norm());
  return rs <= tol && rw <= tol;
}

struct AlternativeDescription {
  StructureTriple triple;
  RealMatrix hamiltonian;
  bool unitary = false;
  // Transported metric or symplectic form differs from the original beyond
  // 1e-6 Frobenius distance after normalizing overall scale.
  bool genuinely_alternative = false;
  double residual_decomposition = 0.0;  // A - H_T C_T
  double residual_complex = 0.0;        // A J_T - J_T A
  double residual_compatibility = 0.0;  // C_T J_T - s_T
};

namespace detail {

inline double normalized_distance(const RealMatrix& x, const RealMatrix& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return std::max(nx, ny);
  return (x / nx - y / ny).norm();
}

}  // namespace detail

/// Transports (C, J, s, H) along a symmetry T of A:
///   H_T = T^{-1} H T^{-T},  C_T = T^T C T,  J_T = T^{-1} J T,  s_T = T^T s T,
/// and verifies the three transported relations against A.
inline AlternativeDescription transport(const SymmetryTransformation& t,
                                        const RealMatrix& a,
                                        const StructureTriple& triple,
                                        const RealMatrix& h) {
  if (t.t.rows() != a.rows() || triple.dim() != a.rows() || h.rows() != a.rows()) {
    throw DimensionError("transport: dimension mismatch");
  }
  if (detail::symmetry_defect(t.t, a) > 1e-9) {
    throw std::invalid_argument("transport: T is not a symmetry of A");
  }
  if ((h * triple.c.c - a).norm() > 1e-9 * std::max(1.0, a.norm())) {
    throw std::invalid_argument("transport: (A, triple, H) are not mutually consistent");
  }

  const RealMatrix tinv = solve_or_invert(t.t);
  RealMatrix c_t = t.t.transpose() * triple.c.c * t.t;
  c_t = ((c_t - c_t.transpose()) / 2.0).eval();
  const RealMatrix j_t = tinv * triple.j.j * t.t;
  RealMatrix h_t = tinv * h * tinv.transpose();
  h_t = ((h_t + h_t.transpose()) / 2.0).eval();

  AlternativeDescription out;
  try {
    out.triple = assemble_triple(PoissonTensor::make(c_t), ComplexStructure::make(j_t));
  } catch (const IncompatibleStructureError& e) {
    throw IncompatibleStructureError(std::string("transport: ") + e.what());
  }
  out.hamiltonian = h_t;
  out.residual_decomposition = (a - h_t * c_t).norm();
  out.residual_complex = (a * j_t - j_t * a).norm();
  out.residual_compatibility = (c_t * j_t - out.triple.s).norm();
  out.unitary = is_unitary_wrt(t, triple);
  out.genuinely_alternative =
      detail::normalized_distance(out.triple.s, triple.s) > 1e-6 ||
      detail::normalized_distance(out.triple.omega.omega, triple.omega.omega) > 1e-6;
  return out;
}

struct PowerClassification {
  int power = 0;
  bool invertible = false;
  // A^k = (symmetric) * C, the odd-power property.
  bool decomposes = false;
  double decomposition_residual = 0.0;
  // Unitarity w.r.t. the standard triple of matching dimension.
  bool unitary_standard = false;
};

/// Per-power report for A^0..A^max_power given that A = HC holds.
inline std::vector<PowerClassification> classify_powers(const RealMatrix& a,
                                                        const PoissonTensor& c,
                                                        int max_power) {
  decompose_hamiltonian(a, c);  // precondition: A itself decomposes
  if (a.rows() % 2 != 0) {
    throw DimensionError("classify_powers: phase space dimension must be even");
  }
  const StructureTriple std_triple = standard_triple(a.rows() / 2);
  const RealMatrix cinv = solve_or_invert(c.c);

  std::vector<PowerClassification> out;
  RealMatrix ak = RealMatrix::Identity(a.rows(), a.cols());
  for (int k = 0; k <= max_power; ++k) {
    if (k > 0) ak = (ak * a).eval();
    PowerClassification pc;
    pc.power = k;
    const RealMatrix hk = ak * cinv;
    pc.decomposition_residual = symmetry_residual(hk) / std::max(1.0, hk.norm());
    pc.decomposes = pc.decomposition_residual <= 1e-9;
    try {
      SymmetryTransformation t{ak, k};
      solve_or_invert(ak);
      pc.invertible = true;
      pc.unitary_standard = is_unitary_wrt(t, std_triple);
    } catch (const SingularMatrixError&) {
      pc.invertible = false;
    }
    out.push_back(std::move(pc));
  }
  return out;
}

/// Basis of the full commutant {T : TA = AT}, from the kernel of the
/// Sylvester operator T -> AT - TA on vectorized matrices. Exact for
/// degenerate spectra where powers of A stop generating. Dimension-capped:
/// the vectorized solve is (2N)^2 x (2N)^2.
inline std::vector<RealMatrix> commutant_basis(const RealMatrix& a) {
  detail::require_square(a, "commutant_basis");
  const Index n = a.rows();
  if (n > 32) {
    throw DimensionError("commutant_basis: supported up to dimension 32");
  }
  RealMatrix sylv = RealMatrix::Zero(n * n, n * n);
  // vec(AT) = (I kron A) vec(T), vec(TA) = (A^T kron I) vec(T), column-major.
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        sylv(j * n + i, j * n + k) += a(i, k);
        sylv(j * n + i, k * n + i) -= a(k, j);
      }
    }
  }
  Eigen::FullPivLU<RealMatrix> lu(sylv);
  lu.setThreshold(1e-10);
  const RealMatrix kernel = lu.kernel();
  std::vector<RealMatrix> basis;
  if (lu.dimensionOfKernel() == 0) return basis;
  basis.reserve(kernel.cols());
  for (Index c = 0; c < kernel.cols(); ++c) {
    RealMatrix t(n, n);
    for (Index j = 0; j < n; ++j) t.col(j) = kernel.col(c).segment(j * n, n);
    basis.push_back(std::move(t));
  }
  return basis;
}

}  // namespace qalt
