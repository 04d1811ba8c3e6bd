#include <doctest.h>

#include <cmath>

#include "maxent/errors.hpp"
#include "maxent/operator_algebra.hpp"
#include "support.hpp"

using namespace maxent;
using namespace maxent::testing;

namespace {

Matrix xx_plus_zi() {
  return pauli_to_dense(PauliTerm("XX", 1.0)) +
         pauli_to_dense(PauliTerm("ZI", 1.0));
}

// Fitted coefficient for targets (0.5, 0.5): XX and ZI anticommute, so
// e^{t(XX+ZI)} = cosh(√2t)I + sinh(√2t)(XX+ZI)/√2 and the expectations are
// (√2/2)tanh(√2t) each. tanh(√2 t*) = 1/√2 hits 0.5.
const double kFittedCoefficient = std::atanh(1.0 / std::sqrt(2.0)) / std::sqrt(2.0);

Matrix paper_rho1() {
  const Matrix id = Matrix::Identity(4, 4);
  return id / 4.0 + xx_plus_zi() / 8.0;
}

}  // namespace

TEST_CASE("pauli_to_dense single letters") {
  const Matrix x = pauli_to_dense(PauliTerm("X", 1.0));
  CHECK(x(0, 1) == Complex(1, 0));
  CHECK(x(1, 0) == Complex(1, 0));
  CHECK(x(0, 0) == Complex(0, 0));

  const Matrix y = pauli_to_dense(PauliTerm("Y", 1.0));
  CHECK(y(0, 1) == Complex(0, -1));
  CHECK(y(1, 0) == Complex(0, 1));

  const Matrix z = pauli_to_dense(PauliTerm("Z", 2.5));
  CHECK(z(0, 0) == Complex(2.5, 0));
  CHECK(z(1, 1) == Complex(-2.5, 0));
}

TEST_CASE("pauli_to_dense tensor products") {
  const Matrix xx = pauli_to_dense(PauliTerm("XX", 1.0));
  for (Index r = 0; r < 4; ++r)
    for (Index c = 0; c < 4; ++c)
      CHECK(xx(r, c) == Complex(r + c == 3 ? 1 : 0, 0));

  const Matrix zi = pauli_to_dense(PauliTerm("ZI", 1.0));
  const RealVector diag = zi.diagonal().real();
  CHECK(diag(0) == 1.0);
  CHECK(diag(1) == 1.0);
  CHECK(diag(2) == -1.0);
  CHECK(diag(3) == -1.0);
  CHECK(zi.cwiseAbs().sum() == doctest::Approx(4.0));
}

TEST_CASE("pauli term validation") {
  CHECK_THROWS_AS(PauliTerm("", 1.0), InvalidInstanceError);
  CHECK_THROWS_AS(PauliTerm("XQ", 1.0), InvalidInstanceError);
  CHECK_THROWS_AS(PauliTerm("X", std::nan("")), InvalidInstanceError);
}

TEST_CASE("pauli strings are trace-orthogonal") {
  const auto strings = all_pauli_strings(2);
  REQUIRE(strings.size() == 16);
  for (size_t a = 1; a < strings.size(); ++a) {
    for (size_t b = 1; b < strings.size(); ++b) {
      const Matrix prod = pauli_to_dense(PauliTerm(strings[a], 1.0)) *
                          pauli_to_dense(PauliTerm(strings[b], 1.0));
      const double expected = a == b ? 4.0 : 0.0;
      CHECK(prod.trace().real() == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  auto rng = rng_for(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::string sa = random_pauli_string(rng, 3);
    const std::string sb = random_pauli_string(rng, 3);
    const Matrix prod = pauli_to_dense(PauliTerm(sa, 1.0)) *
                        pauli_to_dense(PauliTerm(sb, 1.0));
    CHECK(prod.trace().real() ==
          doctest::Approx(sa == sb ? 8.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig on simple operators") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  const auto eig = hermitian_eig(d);
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(3.0));

  const auto x = hermitian_eig(pauli_to_dense(PauliTerm("X", 1.0)));
  CHECK(x.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(x.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig of the boundary Hamiltonian has paired spectrum") {
  // XX and ZI anticommute, so (XX+ZI)² = 2I and −t(XX+ZI) has eigenvalues
  // ±√2·t, each twice. (A published table for t = 28.7177 lists ±10.1532,
  // consistent with ±√2 t only after rescaling t by the dimension.)
  const double t = 28.7177;
  const auto eig = hermitian_eig((-t * xx_plus_zi()).eval());
  const double e = std::sqrt(2.0) * t;
  CHECK(eig.eigenvalues(0) == doctest::Approx(-e).epsilon(1e-12));
  CHECK(eig.eigenvalues(1) == doctest::Approx(-e).epsilon(1e-12));
  CHECK(eig.eigenvalues(2) == doctest::Approx(e).epsilon(1e-12));
  CHECK(eig.eigenvalues(3) == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(1, 0);
  CHECK_THROWS_AS(hermitian_eig(m), InvalidInstanceError);
}

TEST_CASE("spectral decomposition reconstructs the input") {
  auto rng = rng_for(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = random_hermitian(rng, 8);
    const auto eig = hermitian_eig(h);
    const double rel = (eig.reconstruct() - h).norm() / h.norm();
    CHECK(rel < 1e-10);
    for (Index i = 1; i < eig.eigenvalues.size(); ++i)
      CHECK(eig.eigenvalues(i - 1) <= eig.eigenvalues(i));
  }
}

TEST_CASE("gibbs_state of zero Hamiltonian is maximally mixed") {
  for (Index dim : {2, 4, 8}) {
    const DensityMatrix rho = gibbs_state(Matrix::Zero(dim, dim).eval());
    const double dev =
        (rho.matrix() - Matrix::Identity(dim, dim) / double(dim))
            .cwiseAbs()
            .maxCoeff();
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("gibbs_state of a single-qubit X field matches the closed form") {
  for (double theta : {0.3, 1.7, -2.2, 40.0, 350.0}) {
    const Matrix h = theta * pauli_to_dense(PauliTerm("X", 1.0));
    const DensityMatrix rho = gibbs_state(h);
    // e^{−θX} = I coshθ − X sinhθ, so ρ = (I − X tanhθ)/2.
    const Matrix expected =
        0.5 * (Matrix::Identity(2, 2) -
               std::tanh(theta) * pauli_to_dense(PauliTerm("X", 1.0)));
    CHECK((rho.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gibbs_state reproduces the printed feasible-point state") {
  const Matrix h = -kFittedCoefficient * xx_plus_zi();
  const DensityMatrix rho = gibbs_state(h);
  CHECK((rho.matrix() - paper_rho1()).cwiseAbs().maxCoeff() < 1e-10);
  // Printed to four decimals: diagonal (0.3750, 0.3750, 0.1250, 0.1250).
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.3750).epsilon(1e-4));
  CHECK(rho.matrix()(2, 2).real() == doctest::Approx(0.1250).epsilon(1e-4));
  CHECK(rho.matrix()(0, 3).real() == doctest::Approx(0.1250).epsilon(1e-4));
}

TEST_CASE("gibbs_state agrees with a truncated Taylor series at small norm") {
  auto rng = rng_for(23);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix h = random_hermitian(rng, 4);
    h *= 0.05 / h.norm();
    Matrix series = Matrix::Zero(4, 4);
    Matrix power = Matrix::Identity(4, 4);
    double factorial = 1.0;
    for (int k = 0; k < 12; ++k) {
      series += power / factorial;
      power = (power * (-h)).eval();
      factorial *= k + 1;
    }
    const Matrix expected = series / series.trace().real();
    CHECK((gibbs_state(h).matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gibbs_state invariants hold on random Hamiltonians") {
  auto rng = rng_for(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix h = 3.0 * random_hermitian(rng, 8);
    const DensityMatrix rho = gibbs_state(h);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                             Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    const Matrix commutator = rho.matrix() * h - h * rho.matrix();
    CHECK(commutator.norm() < 1e-8 * h.norm());

    // Shift invariance: the eigenvalue offset cancels in the normalization.
    const double shift = 80.0 * (uniform_unit(rng) - 0.5);
    const Matrix shifted = h + shift * Matrix::Identity(8, 8);
    CHECK((gibbs_state(shifted).matrix() - rho.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("gibbs_state survives coefficients far beyond overflow scale") {
  const Matrix h = -2000.0 * xx_plus_zi();
  const DensityMatrix rho = gibbs_state(h);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-10);
}

TEST_CASE("expectation values") {
  const DensityMatrix mixed = gibbs_state(Matrix::Zero(2, 2).eval());
  CHECK(expectation(mixed, pauli_to_dense(PauliTerm("Z", 1.0))) ==
        doctest::Approx(0.0));

  const DensityMatrix rho1 = gibbs_state((-kFittedCoefficient * xx_plus_zi()).eval());
  CHECK(expectation(rho1, pauli_to_dense(PauliTerm("XX", 1.0))) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(expectation(rho1, pauli_to_dense(PauliTerm("ZI", 1.0))) ==
        doctest::Approx(0.5).epsilon(1e-10));

  Vector ket00 = Vector::Zero(4);
  ket00(0) = 1.0;
  CHECK(expectation(pure_state(ket00), pauli_to_dense(PauliTerm("ZI", 1.0))) ==
        doctest::Approx(1.0));

  CHECK_THROWS_AS(expectation(mixed, pauli_to_dense(PauliTerm("ZI", 1.0))),
                  InvalidInstanceError);
}

TEST_CASE("partial trace of a product state recovers the factor") {
  auto rng = rng_for(41);
  const DensityMatrix a = random_density(rng, 2);
  const DensityMatrix b = random_density(rng, 4);
  const DensityMatrix joint(kron(a.matrix(), b.matrix()).eval());
  const DensityMatrix reduced = partial_trace(joint, {1});
  CHECK((reduced.matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  const DensityMatrix reduced_b = partial_trace(joint, {2, 3});
  CHECK((reduced_b.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const DensityMatrix bell = pure_state(bell_state());
  const DensityMatrix reduced = partial_trace(bell, {1});
  CHECK((reduced.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("partial trace duality against embedded observables") {
  auto rng = rng_for(43);
  const DensityMatrix rho = random_density(rng, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_hermitian(rng, 4);
    const double via_reduction =
        expectation(partial_trace(rho, {1, 2}), a);
    const double via_embedding =
        expectation(rho, embed_local(a, {1, 2}, 3));
    CHECK(via_reduction == doctest::Approx(via_embedding).epsilon(1e-10));
  }
}

TEST_CASE("partial trace validates the keep set") {
  const DensityMatrix bell = pure_state(bell_state());
  CHECK_THROWS_AS(partial_trace(bell, {}), InvalidInstanceError);
  CHECK_THROWS_AS(partial_trace(bell, {3}), InvalidInstanceError);
  CHECK_THROWS_AS(partial_trace(bell, {0}), InvalidInstanceError);
}

TEST_CASE("embed_local places operators on the right qubits") {
  const Matrix z = pauli_to_dense(PauliTerm("Z", 1.0));
  const Matrix iz = embed_local(z, {2}, 2);
  CHECK((iz - pauli_to_dense(PauliTerm("IZ", 1.0))).cwiseAbs().maxCoeff() <
        1e-14);

  const Matrix xx = pauli_to_dense(PauliTerm("XX", 1.0));
  const Matrix xxi = embed_local(xx, {1, 2}, 3);
  CHECK((xxi - pauli_to_dense(PauliTerm("XXI", 1.0))).cwiseAbs().maxCoeff() <
        1e-14);

  const Matrix xz = pauli_to_dense(PauliTerm("XZ", 1.0));
  const Matrix x_i_z = embed_local(xz, {1, 3}, 3);
  CHECK((x_i_z - pauli_to_dense(PauliTerm("XIZ", 1.0))).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("embed_local / partial_trace duality on 100 random draws") {
  auto rng = rng_for(47);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(rng, 8);
    const Matrix a = random_hermitian(rng, 2);
    const int site = 1 + static_cast<int>(rng() % 3);
    CHECK(expectation(rho, embed_local(a, {site}, 3)) ==
          doctest::Approx(expectation(partial_trace(rho, {site}), a))
              .epsilon(1e-10));
  }
}

TEST_CASE("embed_local validates sites") {
  const Matrix z = pauli_to_dense(PauliTerm("Z", 1.0));
  CHECK_THROWS_AS(embed_local(z, {}, 2), InvalidInstanceError);
  CHECK_THROWS_AS(embed_local(z, {3}, 2), InvalidInstanceError);
  CHECK_THROWS_AS(embed_local(z, {1, 2}, 2), InvalidInstanceError);
}

TEST_CASE("density matrix constructor enforces the state invariants") {
  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad_trace}, InvalidInstanceError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, InvalidInstanceError);

  Matrix skew = Matrix::Identity(2, 2) / 2.0;
  skew(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{skew}, InvalidInstanceError);
}

TEST_CASE("observable operator checks Pauli/dense agreement") {
  std::vector<PauliTerm> terms{PauliTerm("XX", 1.0), PauliTerm("ZI", 1.0)};
  const ObservableOperator op(terms);
  CHECK(op.n_qubits() == 2);
  CHECK((op.dense() - xx_plus_zi()).cwiseAbs().maxCoeff() < 1e-14);

  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 1) = Complex(0, 1);
  not_hermitian(1, 0) = Complex(0, 1);
  CHECK_THROWS_AS(ObservableOperator{not_hermitian}, InvalidInstanceError);
}
