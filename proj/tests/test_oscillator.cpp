#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qalt/dynamics.hpp"
#include "qalt/kdeform.hpp"
#include "qalt/oscillator.hpp"
#include "qalt/random.hpp"

using namespace qalt;

namespace {

// Double-factorial oracle for the even-sector family:
// e^{lambda K(2s)} = 1 + ((2s-1)!! / (2s)!!) epsilon.
double even_closed_form(int s, double epsilon) {
  double num = 1.0, den = 1.0;
  for (int k = 2 * s - 1; k >= 1; k -= 2) num *= k;
  for (int k = 2 * s; k >= 2; k -= 2) den *= k;
  return 1.0 + (num / den) * epsilon;
}

std::vector<double> random_positive_table(Rng& rng, Index d) {
  std::vector<double> t(static_cast<size_t>(d));
  for (auto& v : t) v = std::exp(uniform(rng));
  return t;
}

}  // anonymous namespace

TEST_CASE("build_fock produces the truncated ladder") {
  const FockLadder l2 = build_fock(2);
  ComplexMatrix a2(2, 2);
  a2 << 0, 1, 0, 0;
  CHECK((l2.a - a2).norm() == 0.0);

  const FockLadder l = build_fock(8);
  const ComplexMatrix comm = l.a * l.a_dag - l.a_dag * l.a;
  for (Index n = 0; n < 7; ++n) {
    CHECK(std::abs(comm(n, n) - 1.0) <= 1e-13);
  }
  CHECK(std::abs(comm(7, 7) + 7.0) <= 1e-13);
  CHECK((comm - ComplexMatrix(comm.diagonal().asDiagonal())).norm() <= 1e-15);

  for (Index n = 0; n < 8; ++n) CHECK(l.n_hat(n, n) == Complex(n, 0));
  CHECK((l.a_dag * l.a - l.n_hat).norm() <= 1e-13);

  CHECK_THROWS_AS(build_fock(1), DimensionError);
  CHECK_THROWS_AS(build_fock(65), DimensionError);
}

TEST_CASE("kcommutator_fock: identity table gives the standard commutator") {
  const FockLadder l = build_fock(6);
  const std::vector<double> ones(6, 1.0);
  const ComplexMatrix comm = kcommutator_fock(l, ones);
  for (Index n = 0; n <= 4; ++n) CHECK(std::abs(comm(n, n) - 1.0) <= 1e-13);
  CHECK(std::abs(comm(5, 5) + 5.0) <= 1e-13);
}

TEST_CASE("kcommutator_fock matches the shift-rule closed form on interior modes") {
  Rng rng(61);
  const FockLadder l = build_fock(16);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> table = random_positive_table(rng, 16);
    const ComplexMatrix comm = kcommutator_fock(l, table);
    const std::vector<double> diag = kcommutator_closed_form(table, 16);
    for (Index n = 0; n <= 14; ++n) {
      CHECK(std::abs(comm(n, n) - diag[static_cast<size_t>(n)]) <= 1e-12);
    }
    // The n = 0 entry uses only the n = 1 table value: no |-1> state exists.
    CHECK(diag[0] == table[1]);
  }
  CHECK_THROWS_AS(kcommutator_fock(l, std::vector<double>(10, 1.0)), DimensionError);
}

TEST_CASE("solve_standard_commutation: epsilon = 0 is the standard relation") {
  const KTable t = solve_standard_commutation(0.0, 12);
  for (double v : t.exp_values) CHECK(v == 1.0);
}

TEST_CASE("solve_standard_commutation: the even sector carries the family") {
  const KTable t = solve_standard_commutation(0.4, 14);
  CHECK(t.exp_values[0] == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(t.exp_values[2] == doctest::Approx(1.2).epsilon(1e-15));   // 1 + eps/2
  CHECK(t.exp_values[4] == doctest::Approx(1.15).epsilon(1e-15));  // 1 + 3 eps/8

  for (int s = 0; s <= 6; ++s) {
    CHECK(std::abs(t.exp_values[static_cast<size_t>(2 * s)] - even_closed_form(s, 0.4)) <=
          1e-14);
  }
}

TEST_CASE("solve_standard_commutation: odd entries are exactly one") {
  for (double eps : {0.0, 0.4, -0.5, 2.5}) {
    const KTable t = solve_standard_commutation(eps, 16);
    for (size_t n = 1; n < t.exp_values.size(); n += 2) {
      CHECK(t.exp_values[n] == 1.0);
    }
    if (eps != 0.0) {
      for (size_t n = 0; n < t.exp_values.size(); n += 2) {
        CHECK(std::abs(t.exp_values[n] - 1.0) > 1e-12);  // even sector deformed
      }
    }
  }
}

TEST_CASE("solve_standard_commutation rejects epsilon <= -1") {
  CHECK_THROWS_AS(solve_standard_commutation(-1.0, 8), PositivityError);
  CHECK_THROWS_AS(solve_standard_commutation(-1.7, 8), PositivityError);
}

TEST_CASE("recurrence tables reproduce the standard commutator on interior modes") {
  const FockLadder l = build_fock(12);
  for (double eps : {0.0, 0.4, -0.5, 1.3}) {
    const KTable t = solve_standard_commutation(eps, 12);
    const ComplexMatrix comm = kcommutator_fock(l, t);
    for (Index n = 0; n <= 10; ++n) {
      CHECK(std::abs(comm(n, n) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("solve_alternative_hamiltonian: the undeformed case returns ones") {
  const FockLadder l = build_fock(10);
  std::vector<double> h(10);
  for (int n = 0; n < 10; ++n) h[static_cast<size_t>(n)] = n + 0.5;
  const AltHamiltonianSolution sol = solve_alternative_hamiltonian(l, h);
  CHECK(sol.singular_modes.empty());
  for (double g : sol.exp_table) CHECK(g == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(alt_hamiltonian_eom_residual(l, h, sol) <= 1e-10);
}

TEST_CASE("solve_alternative_hamiltonian: sinh family flags the vacuum mode") {
  const double lambda = 0.5;
  const Index d = 16;
  const FockLadder l = build_fock(d);
  std::vector<double> htilde(static_cast<size_t>(d));
  for (Index n = 0; n < d; ++n) {
    htilde[static_cast<size_t>(n)] = std::sinh(lambda * static_cast<double>(n)) /
                                     std::sinh(lambda);
  }
  const AltHamiltonianSolution sol = solve_alternative_hamiltonian(l, htilde);
  REQUIRE(sol.singular_modes == std::vector<Index>{0});
  CHECK(std::isnan(sol.exp_table[0]));
  for (Index n = 1; n < d; ++n) {
    const double expected = (static_cast<double>(n) + 0.5) * std::sinh(lambda) /
                            std::sinh(lambda * static_cast<double>(n));
    CHECK(std::abs(sol.exp_table[static_cast<size_t>(n)] - expected) <= 1e-12);
  }
  CHECK(alt_hamiltonian_eom_residual(l, htilde, sol) <= 1e-10);
}

TEST_CASE("solve_alternative_hamiltonian rejects sign-flipping tables") {
  const FockLadder l = build_fock(6);
  std::vector<double> htilde = {0.5, -1.5, 2.5, 3.5, 4.5, 5.5};
  CHECK_THROWS_AS(solve_alternative_hamiltonian(l, htilde), PositivityError);
}

TEST_CASE("build_f_oscillator: trivial nonlinearity reproduces the ladder") {
  const FockLadder l = build_fock(8);
  const FOscillator o = build_f_oscillator(std::vector<double>(8, 1.0), 8);
  CHECK((o.a_def - l.a).norm() == 0.0);
  for (double v : o.phi) CHECK(std::abs(v - 1.0) <= 1e-13);
}

TEST_CASE("f-oscillator commutator diagonal matches phi on interior modes") {
  const Index d = 16;
  const double lambda = 0.2;
  std::vector<double> f(static_cast<size_t>(d));
  for (Index n = 0; n < d; ++n) {
    f[static_cast<size_t>(n)] = std::sqrt(1.0 + lambda * static_cast<double>(n));
  }
  const FOscillator o = build_f_oscillator(f, d);
  CHECK((o.a_def_dag - o.a_def.adjoint()).norm() == 0.0);

  const ComplexMatrix comm = o.a_def * o.a_def_dag - o.a_def_dag * o.a_def;
  for (Index n = 0; n <= d - 2; ++n) {
    const double expected = lambda * (2.0 * static_cast<double>(n) + 1.0) + 1.0;
    CHECK(std::abs(o.phi[static_cast<size_t>(n)] - expected) <= 1e-12);
    CHECK(std::abs(comm(n, n) - expected) <= 1e-12);
  }
  for (Index n = 0; n < d; ++n) {
    const double fn = f[static_cast<size_t>(n)];
    CHECK(o.big_f[static_cast<size_t>(n)] ==
          doctest::Approx(fn * fn * static_cast<double>(n)).epsilon(1e-14));
  }

  // The trace vanishes identically, so the boundary entry balances the
  // interior diagonal: it is -(D-1) f^2(D-1), purely a truncation artifact.
  CHECK(std::abs(comm.trace()) <= 1e-12);
  const double f_last = f[static_cast<size_t>(d - 1)];
  CHECK(std::abs(comm(d - 1, d - 1) +
                 static_cast<double>(d - 1) * f_last * f_last) <= 1e-12);
}

TEST_CASE("a zero of f decomposes the space into invariant blocks") {
  const Index d = 10;
  std::vector<double> f(static_cast<size_t>(d), 1.0);
  f[3] = 0.0;
  const FOscillator o = build_f_oscillator(f, d);
  const BlockReport r = invariant_blocks(o);
  REQUIRE(r.blocks.size() == 2);
  CHECK(r.blocks[0] == std::pair<Index, Index>{0, 2});
  CHECK(r.blocks[1] == std::pair<Index, Index>{3, 9});
  CHECK(r.max_cross_coupling == 0.0);

  // Explicit closure check: nothing couples {|0>,|1>,|2>} to the rest.
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const bool inside_i = i <= 2, inside_j = j <= 2;
      if (inside_i != inside_j) {
        CHECK(std::abs(o.a_def(i, j)) == 0.0);
        CHECK(std::abs(o.a_def_dag(i, j)) == 0.0);
      }
    }
  }
}

TEST_CASE("f_from_ktable: identity table, positivity, F_K consistency") {
  const std::vector<double> ones(12, 1.0);
  const std::vector<double> f1 = f_from_ktable(ones, 12);
  for (double v : f1) CHECK(v == 1.0);

  Rng rng(62);
  const Index d = 12;
  const std::vector<double> table = random_positive_table(rng, d);
  const std::vector<double> f = f_from_ktable(table, d);
  for (double v : f) CHECK(v > 0.0);

  // F_K(a) with K = diag(log g), lambda = 1 must equal a f(n).
  std::vector<double> log_table(table.size());
  for (size_t i = 0; i < table.size(); ++i) log_table[i] = std::log(table[i]);
  const auto defo = ComplexDeformation::from_diagonal(log_table, 1.0);
  const FockLadder l = build_fock(d);
  const ComplexMatrix via_fk = fk_map(ComplexMatrix(l.a), defo);
  const FOscillator o = build_f_oscillator(f, d);
  CHECK((via_fk - o.a_def).norm() <= 1e-12);

  std::vector<double> with_zero = table;
  with_zero[4] = 0.0;
  CHECK_THROWS_AS(f_from_ktable(with_zero, d), PositivityError);
}

TEST_CASE("dual_scalar_products: trivial f gives the orthonormal Fock basis") {
  const FOscillator o = build_f_oscillator(std::vector<double>(8, 1.0), 8);
  const GramReport r = dual_scalar_products(o);
  for (double g : r.h1_gram_diag) CHECK(std::abs(g - 1.0) <= 1e-13);
  CHECK(r.h1_gram_offdiag <= 1e-14);
  CHECK(r.h2_commutator_residual <= 1e-12);
}

TEST_CASE("dual_scalar_products: affine f matches the product formula") {
  const Index d = 12;
  const double lambda = 0.2;
  std::vector<double> f(static_cast<size_t>(d));
  for (Index n = 0; n < d; ++n) {
    f[static_cast<size_t>(n)] = std::sqrt(1.0 + lambda * static_cast<double>(n));
  }
  const FOscillator o = build_f_oscillator(f, d);
  const GramReport r = dual_scalar_products(o, 8);

  double prod = 1.0;
  for (Index n = 0; n <= 8; ++n) {
    if (n > 0) prod *= 1.0 + lambda * static_cast<double>(n);
    const double got = r.h1_gram_diag[static_cast<size_t>(n)];
    CHECK(std::abs(got - prod) <= 1e-10 * std::max(1.0, prod));
  }
  CHECK(r.h2_commutator_residual <= 1e-10);
}

TEST_CASE("dual_scalar_products refuses ranges containing a zero of f") {
  std::vector<double> f(10, 1.0);
  f[3] = 0.0;
  const FOscillator o = build_f_oscillator(f, 10);
  CHECK_THROWS_AS(dual_scalar_products(o), SingularMatrixError);
  CHECK_NOTHROW(dual_scalar_products(o, 2));
}

TEST_CASE("f-deformation leaves the equations of motion unchanged") {
  const Index d = 12;
  std::vector<double> f(static_cast<size_t>(d));
  for (Index n = 0; n < d; ++n) {
    f[static_cast<size_t>(n)] = std::sqrt(1.0 + 0.3 * static_cast<double>(n));
  }
  const FOscillator o = build_f_oscillator(f, d);
  const FockLadder l = build_fock(d);
  const ComplexMatrix h = l.n_hat + 0.5 * ComplexMatrix::Identity(d, d);
  for (double t : {0.4, 2.0, 5.0}) {
    const ComplexMatrix a_t = evolve_heisenberg(h, o.a_def, t);
    const ComplexMatrix expected = std::exp(Complex(0.0, -t)) * o.a_def;
    CHECK((interior_block(a_t) - interior_block(expected)).norm() <= 1e-8);
  }
}
