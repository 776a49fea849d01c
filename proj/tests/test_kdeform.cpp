#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qalt/dynamics.hpp"
#include "qalt/kdeform.hpp"
#include "qalt/oscillator.hpp"
#include "qalt/random.hpp"

using namespace qalt;

namespace {

ComplexDeformation random_deformation(Rng& rng, Index n, double lambda) {
  ComplexMatrix k = random_hermitian(rng, n);
  k *= 1.5 / k.norm();
  return ComplexDeformation::make(std::move(k), lambda);
}

}  // anonymous namespace

TEST_CASE("kproduct reduces to the ordinary product when the deformation is off") {
  Rng rng(41);
  const ComplexMatrix a = random_complex_matrix(rng, 4, 4);
  const ComplexMatrix b = random_complex_matrix(rng, 4, 4);

  const auto lambda_zero = ComplexDeformation::make(random_hermitian(rng, 4), 0.0);
  CHECK((kproduct(a, b, lambda_zero) - a * b).norm() <= 1e-13);

  const auto k_zero = ComplexDeformation::make(ComplexMatrix::Zero(4, 4), 0.7);
  CHECK((kproduct(a, b, k_zero) - a * b).norm() <= 1e-13);
  CHECK((kbracket(a, b, k_zero) - (a * b - b * a)).norm() <= 1e-13);
  CHECK((fk_map(a, k_zero) - a).norm() <= 1e-13);
}

TEST_CASE("kproduct is associative") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_deformation(rng, 5, 0.4);
    const ComplexMatrix a = random_complex_matrix(rng, 5, 5);
    const ComplexMatrix b = random_complex_matrix(rng, 5, 5);
    const ComplexMatrix c = random_complex_matrix(rng, 5, 5);
    const ComplexMatrix lhs = kproduct(kproduct(a, b, d), c, d);
    const ComplexMatrix rhs = kproduct(a, kproduct(b, c, d), d);
    CHECK((lhs - rhs).norm() <= 1e-10);

    const ComplexMatrix distributive =
        kproduct((a + b).eval(), c, d) - kproduct(a, c, d) - kproduct(b, c, d);
    CHECK(distributive.norm() <= 1e-12);
  }
}

TEST_CASE("kbracket is antisymmetric and satisfies Jacobi") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_deformation(rng, 4, 0.6);
    const ComplexMatrix a = random_complex_matrix(rng, 4, 4);
    const ComplexMatrix b = random_complex_matrix(rng, 4, 4);
    const ComplexMatrix c = random_complex_matrix(rng, 4, 4);

    CHECK(kbracket(a, a, d).norm() == 0.0);
    CHECK((kbracket(a, b, d) + kbracket(b, a, d)).norm() <= 1e-13);

    const ComplexMatrix jac = kbracket(a, kbracket(b, c, d), d) +
                              kbracket(b, kbracket(c, a, d), d) +
                              kbracket(c, kbracket(a, b, d), d);
    CHECK(jac.norm() <= 1e-10);
  }
}

TEST_CASE("kbracket acts as a derivation of the deformed product") {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_deformation(rng, 4, 0.5);
    const ComplexMatrix a = random_complex_matrix(rng, 4, 4);
    const ComplexMatrix b = random_complex_matrix(rng, 4, 4);
    const ComplexMatrix c = random_complex_matrix(rng, 4, 4);
    const ComplexMatrix lhs = kbracket(a, kproduct(b, c, d), d);
    const ComplexMatrix rhs =
        kproduct(kbracket(a, b, d), c, d) + kproduct(b, kbracket(a, c, d), d);
    CHECK((lhs - rhs).norm() <= 1e-10);
  }
}

TEST_CASE("fk_map is a homomorphism for both products") {
  Rng rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_deformation(rng, 4, 0.3);
    const ComplexMatrix a = random_complex_matrix(rng, 4, 4);
    const ComplexMatrix b = random_complex_matrix(rng, 4, 4);

    const ComplexMatrix assoc_lhs = fk_map(a, d) * fk_map(b, d);
    const ComplexMatrix assoc_rhs = fk_map(kproduct(a, b, d), d);
    CHECK((assoc_lhs - assoc_rhs).norm() <= 1e-10);

    const ComplexMatrix lie_lhs =
        fk_map(a, d) * fk_map(b, d) - fk_map(b, d) * fk_map(a, d);
    const ComplexMatrix lie_rhs = fk_map(kbracket(a, b, d), d);
    CHECK((lie_lhs - lie_rhs).norm() <= 1e-10);
  }
}

TEST_CASE("fk_map is inverted by the opposite deformation") {
  Rng rng(46);
  const ComplexMatrix k = random_hermitian(rng, 5);
  const auto d = ComplexDeformation::make(k, 0.8);
  const auto d_inv = ComplexDeformation::make(k, -0.8);
  const ComplexMatrix a = random_complex_matrix(rng, 5, 5);
  CHECK((fk_map(fk_map(a, d), d_inv) - a).norm() <= 1e-10);
}

TEST_CASE("kscalar is the reference product at K = 0 and positive definite") {
  Rng rng(47);
  const auto k_zero = ComplexDeformation::make(ComplexMatrix::Zero(4, 4), 1.0);
  const ComplexVector u = random_state(rng, 4);
  const ComplexVector v = random_state(rng, 4);
  CHECK(std::abs(kscalar(u, v, k_zero) - u.dot(v)) <= 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    const auto d = random_deformation(rng, 4, 1.0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(d.exp_full);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    // Hermitean sesquilinear form.
    CHECK(std::abs(kscalar(u, v, d) - std::conj(kscalar(v, u, d))) <= 1e-13);
    CHECK(kscalar(u, u, d).real() > 0.0);
  }
}

TEST_CASE("K-expectation equals the reference expectation of F_K") {
  Rng rng(48);
  const auto d = random_deformation(rng, 4, 0.9);
  const ComplexMatrix a = random_complex_matrix(rng, 4, 4);
  const ComplexMatrix fka = fk_map(a, d).cast<Complex>();
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVector psi = random_state(rng, 4);
    const Complex via_fk = psi.dot(fka * psi);
    const Complex via_kproduct = kexpectation(a, psi, d);
    CHECK(std::abs(via_fk - via_kproduct) <= 1e-12);
  }
}

TEST_CASE("DeformationOperator validates hermiticity and accepts diagonal tables") {
  Rng rng(49);
  const ComplexMatrix bad = random_complex_matrix(rng, 3, 3);
  CHECK_THROWS_AS(ComplexDeformation::make(bad, 0.5), std::invalid_argument);

  const std::vector<double> diag = {0.0, 0.3, 0.8, 1.5};
  const auto from_table = ComplexDeformation::from_diagonal(diag, 0.6);
  ComplexMatrix k = ComplexMatrix::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) k(i, i) = diag[static_cast<size_t>(i)];
  const auto from_matrix = ComplexDeformation::make(k, 0.6);
  CHECK((from_table.exp_full - from_matrix.exp_full).norm() <= 1e-13);
  for (Index i = 0; i < 4; ++i) {
    CHECK(from_table.exp_full(i, i).real() ==
          doctest::Approx(std::exp(0.6 * diag[static_cast<size_t>(i)])).epsilon(1e-13));
  }
}

TEST_CASE("real symmetric deformations work through the same operations") {
  Rng rng(50);
  RealMatrix k = random_symmetric(rng, 4);
  const auto d = RealDeformation::make(k, 0.4);
  const RealMatrix a = random_matrix(rng, 4, 4);
  const RealMatrix b = random_matrix(rng, 4, 4);
  CHECK((kproduct(kproduct(a, b, d), a, d) - kproduct(a, kproduct(b, a, d), d)).norm() <=
        1e-11);
}

TEST_CASE("is_constant_of_motion detects commuting deformations") {
  Rng rng(51);
  const ComplexMatrix h = random_hermitian(rng, 5);
  CHECK(is_constant_of_motion(h, h));

  const FockLadder ladder = build_fock(10);
  const ComplexMatrix h_fock =
      ladder.n_hat + 0.5 * ComplexMatrix::Identity(10, 10);
  const ComplexMatrix k_poly =
      ladder.n_hat * ladder.n_hat - 2.0 * ladder.n_hat;  // diagonal polynomial
  CHECK(is_constant_of_motion(k_poly, h_fock));

  const ComplexMatrix k_bad = random_hermitian(rng, 5);
  CHECK_FALSE(is_constant_of_motion(k_bad, h));
}

TEST_CASE("conserved K keeps the deformed norm constant along the flow") {
  Rng rng(52);
  const ComplexMatrix h = random_hermitian(rng, 5);
  const ComplexMatrix k = h * h - 0.5 * h;  // commutes with H, Hermitean
  REQUIRE(is_constant_of_motion(k, h, 1e-12));
  const auto d = ComplexDeformation::make(k, 0.7);

  const ComplexVector psi0 = random_state(rng, 5);
  const Complex reference = kscalar(psi0, psi0, d);
  for (double t : {0.5, 2.0, 5.0, 10.0}) {
    const ComplexVector psi_t = evolve_state(h, psi0, t);
    CHECK(std::abs(kscalar(psi_t, psi_t, d) - reference) <= 1e-8);
  }
}
