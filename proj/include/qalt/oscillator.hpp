#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qalt/numerics.hpp"
#include "qalt/types.hpp"

namespace qalt {

// Truncated Fock space machinery: ladder operators, deformed commutators
// [a, a+]_K, the alternative-Hamiltonian solver Htilde e^{lambda K} = n + 1/2,
// the standard-commutator recurrence and its one-parameter family, and
// f-deformed oscillators A = a f(n) with finite-block detection.
//
// Truncation policy: operator identities of the infinite space are asserted
// on interior modes n <= D-2 only; the last mode carries the truncation
// artifact and is reported separately.

struct FockLadder {
  Index dim = 0;
  ComplexMatrix a;
  ComplexMatrix a_dag;
  ComplexMatrix n_hat;  // integer diagonal; a_dag * a reproduces it to rounding
};

inline FockLadder build_fock(Index d) {
  if (d < 2 || d > kMaxFockDim) {
    throw DimensionError("build_fock: dimension must lie in [2, " +
                         std::to_string(kMaxFockDim) + "]");
  }
  FockLadder l;
  l.dim = d;
  l.a = ComplexMatrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) {
    l.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  l.a_dag = l.a.adjoint();
  l.n_hat = ComplexMatrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) l.n_hat(n, n) = static_cast<double>(n);
  return l;
}

/// Exponent table e^{lambda K(n)} together with the family parameter of the
/// standard-commutator recurrence.
struct KTable {
  std::vector<double> exp_values;
  double epsilon = 0.0;

  Index size() const { return static_cast<Index>(exp_values.size()); }
};

namespace detail {

inline void require_table(const std::vector<double>& table, Index d, const char* where) {
  if (static_cast<Index>(table.size()) < d) {
    throw DimensionError(std::string(where) + ": table has " +
                         std::to_string(table.size()) + " entries, need " +
                         std::to_string(d));
  }
}

inline ComplexMatrix diagonal_matrix(const std::vector<double>& values, Index d) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) m(n, n) = values[static_cast<size_t>(n)];
  return m;
}

}  // namespace detail

/// Deformed commutator a e^{lambda K(n)} a+ - a+ e^{lambda K(n)} a as a matrix.
inline ComplexMatrix kcommutator_fock(const FockLadder& ladder,
                                      const std::vector<double>& exp_table) {
  detail::require_table(exp_table, ladder.dim, "kcommutator_fock");
  const ComplexMatrix g = detail::diagonal_matrix(exp_table, ladder.dim);
  return ladder.a * g * ladder.a_dag - ladder.a_dag * g * ladder.a;
}

inline ComplexMatrix kcommutator_fock(const FockLadder& ladder, const KTable& table) {
  return kcommutator_fock(ladder, table.exp_values);
}

/// Closed-form diagonal of the deformed commutator on interior modes,
/// (e^{lambda K(n+1)} - e^{lambda K(n-1)}) n + e^{lambda K(n+1)} for
/// n = 0..D-2; the n = 0 entry never references K(-1).
inline std::vector<double> kcommutator_closed_form(const std::vector<double>& exp_table,
                                                   Index d) {
  detail::require_table(exp_table, d, "kcommutator_closed_form");
  std::vector<double> diag(static_cast<size_t>(d - 1));
  diag[0] = exp_table[1];
  for (Index n = 1; n <= d - 2; ++n) {
    const double gp = exp_table[static_cast<size_t>(n + 1)];
    const double gm = exp_table[static_cast<size_t>(n - 1)];
    diag[static_cast<size_t>(n)] = (gp - gm) * static_cast<double>(n) + gp;
  }
  return diag;
}

/// Solves (n+1) e^{lambda K(n+1)} - n e^{lambda K(n-1)} = 1 for the exponent
/// table. The n = 0 equation forces entry 1 to be exactly 1; every odd entry
/// follows suit, and the even entries form the epsilon family seeded by
/// entry 0 = 1 + epsilon. Entries must stay positive (epsilon > -1).
inline KTable solve_standard_commutation(double epsilon, Index d) {
  if (d < 2) throw DimensionError("solve_standard_commutation: need D >= 2");
  if (d > kMaxFockDim) {
    throw DimensionError("solve_standard_commutation: D exceeds the Fock cap");
  }
  KTable t;
  t.epsilon = epsilon;
  t.exp_values.resize(static_cast<size_t>(d));
  t.exp_values[0] = 1.0 + epsilon;
  t.exp_values[1] = 1.0;
  for (Index n = 1; n + 1 < d; ++n) {
    // (n g(n-1) + 1) / (n+1): the fused form keeps the odd entries exactly 1.
    const double nn = static_cast<double>(n);
    t.exp_values[static_cast<size_t>(n + 1)] =
        (nn * t.exp_values[static_cast<size_t>(n - 1)] + 1.0) / (nn + 1.0);
  }
  for (Index n = 0; n < d; ++n) {
    if (t.exp_values[static_cast<size_t>(n)] <= 0.0) {
      throw PositivityError("solve_standard_commutation: entry " + std::to_string(n) +
                            " is not positive (epsilon <= -1)");
    }
  }
  return t;
}

/// Exponent table for an alternative Hamiltonian: e^{lambda K}(n) solving
/// Htilde(n) e^{lambda K}(n) = n + 1/2. Modes with |Htilde(n)| < 1e-12 are
/// excluded and flagged; their table entries are NaN.
struct AltHamiltonianSolution {
  std::vector<double> exp_table;
  std::vector<Index> singular_modes;
};

inline AltHamiltonianSolution solve_alternative_hamiltonian(
    const FockLadder& ladder, const std::vector<double>& htilde) {
  detail::require_table(htilde, ladder.dim, "solve_alternative_hamiltonian");
  AltHamiltonianSolution sol;
  sol.exp_table.resize(static_cast<size_t>(ladder.dim),
                       std::numeric_limits<double>::quiet_NaN());
  std::vector<Index> nonpositive;
  for (Index n = 0; n < ladder.dim; ++n) {
    const double ht = htilde[static_cast<size_t>(n)];
    if (std::abs(ht) < 1e-12) {
      sol.singular_modes.push_back(n);
      continue;
    }
    const double g = (static_cast<double>(n) + 0.5) / ht;
    if (g <= 0.0) nonpositive.push_back(n);
    sol.exp_table[static_cast<size_t>(n)] = g;
  }
  if (!nonpositive.empty()) {
    std::string modes;
    for (Index n : nonpositive) modes += " " + std::to_string(n);
    throw PositivityError("solve_alternative_hamiltonian: e^{lambda K} not positive at mode" +
                          modes);
  }
  return sol;
}

/// Residual of the deformed equation of motion [Htilde, a]_K + a, restricted
/// to the modes the solver did not flag as singular.
inline double alt_hamiltonian_eom_residual(const FockLadder& ladder,
                                           const std::vector<double>& htilde,
                                           const AltHamiltonianSolution& sol) {
  detail::require_table(htilde, ladder.dim, "alt_hamiltonian_eom_residual");
  std::vector<double> filled = sol.exp_table;
  for (Index n : sol.singular_modes) filled[static_cast<size_t>(n)] = 1.0;
  const ComplexMatrix g = detail::diagonal_matrix(filled, ladder.dim);
  const ComplexMatrix ht = detail::diagonal_matrix(htilde, ladder.dim);
  ComplexMatrix r = ht * g * ladder.a - ladder.a * g * ht + ladder.a;
  for (Index n : sol.singular_modes) {
    r.row(n).setZero();
    r.col(n).setZero();
  }
  return r.norm();
}

/// f-deformed oscillator A = a f(n), A+ = f(n) a+. The interior commutator
/// diagonal is phi(n) = (n+1) f^2(n+1) - n f^2(n); F(n) = f^2(n) n records
/// the deformed number spectrum. Zeros of f are legal and split the space.
struct FOscillator {
  Index dim = 0;
  std::vector<double> f;
  ComplexMatrix a_def;
  ComplexMatrix a_def_dag;
  std::vector<double> phi;    // n = 0..D-2
  std::vector<double> big_f;  // n = 0..D-1
};

inline FOscillator build_f_oscillator(const std::vector<double>& f, Index d) {
  detail::require_table(f, d, "build_f_oscillator");
  for (Index n = 0; n < d; ++n) {
    if (!std::isfinite(f[static_cast<size_t>(n)])) {
      throw std::invalid_argument("build_f_oscillator: f has non-finite entries");
    }
  }
  const FockLadder ladder = build_fock(d);
  FOscillator o;
  o.dim = d;
  o.f.assign(f.begin(), f.begin() + d);
  const ComplexMatrix fdiag = detail::diagonal_matrix(o.f, d);
  o.a_def = ladder.a * fdiag;
  o.a_def_dag = o.a_def.adjoint();
  o.phi.resize(static_cast<size_t>(d - 1));
  for (Index n = 0; n + 1 < d; ++n) {
    const double fn = o.f[static_cast<size_t>(n)];
    const double fp = o.f[static_cast<size_t>(n + 1)];
    o.phi[static_cast<size_t>(n)] =
        static_cast<double>(n + 1) * fp * fp - static_cast<double>(n) * fn * fn;
  }
  o.big_f.resize(static_cast<size_t>(d));
  for (Index n = 0; n < d; ++n) {
    const double fn = o.f[static_cast<size_t>(n)];
    o.big_f[static_cast<size_t>(n)] = fn * fn * static_cast<double>(n);
  }
  return o;
}

/// Partition of the Fock levels into blocks closed under A and A+. A zero of
/// f at level z >= 1 severs the coupling between levels z-1 and z, so the
/// state space decomposes into a direct sum of finite blocks.
struct BlockReport {
  std::vector<std::pair<Index, Index>> blocks;  // inclusive [first, last] ranges
  double max_cross_coupling = 0.0;
};

inline BlockReport invariant_blocks(const FOscillator& osc) {
  BlockReport r;
  Index start = 0;
  for (Index z = 1; z < osc.dim; ++z) {
    if (osc.f[static_cast<size_t>(z)] == 0.0) {
      r.blocks.emplace_back(start, z - 1);
      start = z;
    }
  }
  r.blocks.emplace_back(start, osc.dim - 1);

  std::vector<Index> block_of(static_cast<size_t>(osc.dim));
  for (size_t b = 0; b < r.blocks.size(); ++b) {
    for (Index n = r.blocks[b].first; n <= r.blocks[b].second; ++n) {
      block_of[static_cast<size_t>(n)] = static_cast<Index>(b);
    }
  }
  for (Index i = 0; i < osc.dim; ++i) {
    for (Index j = 0; j < osc.dim; ++j) {
      if (block_of[static_cast<size_t>(i)] == block_of[static_cast<size_t>(j)]) continue;
      r.max_cross_coupling = std::max(
          {r.max_cross_coupling, std::abs(osc.a_def(i, j)), std::abs(osc.a_def_dag(i, j))});
    }
  }
  return r;
}

/// Nonlinearity from an exponent table: f(n) = sqrt(e^{lambda K(n-1)} e^{lambda K(n)})
/// for n >= 1. f(0) = 1 by convention; no matrix element of a f(n) uses it.
/// The output is always strictly positive, so an f with zeroes cannot arise
/// from any K.
inline std::vector<double> f_from_ktable(const std::vector<double>& exp_table, Index d) {
  detail::require_table(exp_table, d, "f_from_ktable");
  for (Index n = 0; n < d; ++n) {
    if (!(exp_table[static_cast<size_t>(n)] > 0.0)) {
      throw PositivityError("f_from_ktable: table entry " + std::to_string(n) +
                            " is not positive");
    }
  }
  std::vector<double> f(static_cast<size_t>(d));
  f[0] = 1.0;
  for (Index n = 1; n < d; ++n) {
    f[static_cast<size_t>(n)] = std::sqrt(exp_table[static_cast<size_t>(n - 1)] *
                                          exp_table[static_cast<size_t>(n)]);
  }
  return f;
}

/// The two scalar products of a deformed oscillator: h1 keeps the Fock basis
/// orthonormal and measures the deformed states |N> = (A+)^n / sqrt(n!) |0>,
/// whose Gram matrix is diagonal; h2 declares the |N> orthonormal, and with
/// respect to it the pair (h2-adjoint of A+, A+) obeys the standard
/// commutation relation on interior modes.
struct GramReport {
  Index n_max = 0;
  std::vector<double> h1_gram_diag;    // squared h1 norms of |N>, n = 0..n_max
  double h1_gram_offdiag = 0.0;        // largest off-diagonal Gram entry
  double h2_commutator_residual = 0.0; // interior deviation from the identity
};

inline GramReport dual_scalar_products(const FOscillator& osc, Index n_max = -1) {
  if (n_max < 0) n_max = osc.dim - 1;
  if (n_max > osc.dim - 1) {
    throw DimensionError("dual_scalar_products: n_max exceeds the truncation");
  }
  for (Index k = 1; k <= n_max; ++k) {
    if (osc.f[static_cast<size_t>(k)] == 0.0) {
      throw SingularMatrixError(
          "dual_scalar_products: f(" + std::to_string(k) +
          ") = 0 inside the requested range; restrict below the first zero");
    }
  }

  GramReport r;
  r.n_max = n_max;

  // |N> built by matrix construction, dividing by sqrt(n) at each rung.
  std::vector<ComplexVector> states;
  states.reserve(static_cast<size_t>(n_max + 1));
  ComplexVector v = ComplexVector::Zero(osc.dim);
  v[0] = 1.0;
  states.push_back(v);
  for (Index n = 1; n <= n_max; ++n) {
    v = (osc.a_def_dag * v / std::sqrt(static_cast<double>(n))).eval();
    states.push_back(v);
  }
  r.h1_gram_diag.resize(static_cast<size_t>(n_max + 1));
  for (Index n = 0; n <= n_max; ++n) {
    r.h1_gram_diag[static_cast<size_t>(n)] = states[static_cast<size_t>(n)].squaredNorm();
    for (Index m = 0; m < n; ++m) {
      r.h1_gram_offdiag =
          std::max(r.h1_gram_offdiag,
                   std::abs(states[static_cast<size_t>(m)].dot(states[static_cast<size_t>(n)])));
    }
  }

  // Change of basis to the h2-orthonormal states: the raising operator
  // becomes the exact sqrt(n+1) ladder, its h2-adjoint lowers, and the
  // commutator is the identity away from the truncation edge.
  const Index m = n_max + 1;
  ComplexVector scale(m);
  for (Index n = 0; n < m; ++n) scale[n] = states[static_cast<size_t>(n)][n];
  const ComplexMatrix adag_block = osc.a_def_dag.topLeftCorner(m, m);
  ComplexMatrix raise = scale.asDiagonal().inverse() * adag_block * scale.asDiagonal();
  const ComplexMatrix lower = raise.adjoint();
  const ComplexMatrix comm = lower * raise - raise * lower;
  const ComplexMatrix interior =
      comm.topLeftCorner(m - 1, m - 1) - ComplexMatrix::Identity(m - 1, m - 1);
  r.h2_commutator_residual = interior.norm();
  return r;
}

/// Interior view: drops the truncation-boundary row and column.
inline ComplexMatrix interior_block(const ComplexMatrix& m) {
  return m.topLeftCorner(m.rows() - 1, m.cols() - 1);
}

}  // namespace qalt
