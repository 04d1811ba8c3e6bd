#include <doctest.h>

#include <cmath>

#include "maxent/errors.hpp"
#include "maxent/solver.hpp"
#include "support.hpp"

using namespace maxent;
using namespace maxent::testing;

namespace {

const double kFittedCoefficient =
    std::atanh(1.0 / std::sqrt(2.0)) / std::sqrt(2.0);

CompatibilityInstance xx_zi_instance(double a1, double a2) {
  std::vector<ObservableOperator> obs;
  obs.emplace_back(std::vector<PauliTerm>{PauliTerm("XX", 1.0)}, 2);
  obs.emplace_back(std::vector<PauliTerm>{PauliTerm("ZI", 1.0)}, 2);
  RealVector targets(2);
  targets << a1, a2;
  return CompatibilityInstance(2, std::move(obs), std::move(targets));
}

// Targets realized by an actual state are feasible by construction.
CompatibilityInstance random_feasible(std::mt19937_64& rng, int n, int m) {
  const Index dim = Index{1} << n;
  const DensityMatrix rho = random_density(rng, dim);
  std::vector<ObservableOperator> obs;
  RealVector targets(m);
  for (int i = 0; i < m; ++i) {
    const std::string letters = random_pauli_string(rng, n);
    obs.emplace_back(std::vector<PauliTerm>{PauliTerm(letters, 1.0)}, n);
    targets(i) = expectation(rho, obs.back());
  }
  return CompatibilityInstance(n, std::move(obs), std::move(targets));
}

}  // namespace

TEST_CASE("loss vanishes at the uniform state with matching targets") {
  auto rng = rng_for(3);
  const Index dim = 8;
  const DensityMatrix uniform = gibbs_state(Matrix::Zero(dim, dim).eval());
  std::vector<ObservableOperator> obs;
  RealVector targets(4);
  for (int i = 0; i < 4; ++i) {
    obs.emplace_back(random_hermitian(rng, dim));
    targets(i) = expectation(uniform, obs.back());
  }
  const CompatibilityInstance instance(3, std::move(obs), targets);
  CHECK(loss(instance, RealVector::Zero(4)) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("loss at the fitted feasible coefficients is tiny") {
  const auto instance = xx_zi_instance(0.5, 0.5);
  RealVector c(2);
  c << -kFittedCoefficient, -kFittedCoefficient;
  CHECK(loss(instance, c) <= 1e-4);
  CHECK(loss(instance, c) <= 1e-20);  // exact by the closed form
}

TEST_CASE("loss at large boundary coefficients matches the projection oracle") {
  const auto instance = xx_zi_instance(2.0, 2.0);
  RealVector c(2);
  c << -28.7177, -28.7177;
  // The limit state is [I + (XX+ZI)/√2]/4 with both expectations √2/2.
  const double limit = std::sqrt(2.0) / 2.0;
  const double expected = 2.0 * (2.0 - limit) * (2.0 - limit);
  CHECK(loss(instance, c) == doctest::Approx(expected).epsilon(1e-9));

  // Cross-check against the 4-decimal printed matrix for the same point.
  Matrix printed(4, 4);
  printed.setZero();
  printed(0, 0) = 0.4268;
  printed(1, 1) = 0.4268;
  printed(2, 2) = 0.0732;
  printed(3, 3) = 0.0732;
  printed(0, 3) = printed(3, 0) = 0.1768;
  printed(1, 2) = printed(2, 1) = 0.1768;
  const double printed_xx =
      expectation(printed, pauli_to_dense(PauliTerm("XX", 1.0)));
  const double printed_loss = 2.0 * (2.0 - printed_xx) * (2.0 - printed_xx);
  CHECK(loss(instance, c) == doctest::Approx(printed_loss).epsilon(2e-3));
}

TEST_CASE("loss rejects coefficient vectors of the wrong length") {
  const auto instance = xx_zi_instance(0.5, 0.5);
  CHECK_THROWS_AS(loss(instance, RealVector::Zero(3)), InvalidInstanceError);
}

TEST_CASE("loss is invariant under simultaneous permutation") {
  auto rng = rng_for(17);
  const auto instance = random_feasible(rng, 2, 4);
  RealVector c(4);
  for (Index i = 0; i < 4; ++i) c(i) = 2.0 * uniform_unit(rng) - 1.0;

  const std::vector<size_t> perm{2, 0, 3, 1};
  std::vector<ObservableOperator> obs;
  RealVector targets(4), cp(4);
  for (size_t i = 0; i < 4; ++i) {
    obs.push_back(instance.observables()[perm[i]]);
    targets(static_cast<Index>(i)) =
        instance.targets()(static_cast<Index>(perm[i]));
    cp(static_cast<Index>(i)) = c(static_cast<Index>(perm[i]));
  }
  const CompatibilityInstance permuted(2, std::move(obs), targets);
  CHECK(loss(instance, c) ==
        doctest::Approx(loss(permuted, cp)).epsilon(1e-13));
}

TEST_CASE("gradient matches a parabola fit through five samples") {
  auto rng = rng_for(19);
  const auto instance = random_feasible(rng, 1, 2);
  RealVector c(2);
  c << 0.4, -0.3;
  const RealVector grad = gradient_fd(instance, c);

  const double h = 1e-3;
  for (Index i = 0; i < 2; ++i) {
    // Least-squares quadratic through f(c + k h e_i), k = −2..2; the linear
    // coefficient is Σ k f_k / (10h).
    double num = 0.0;
    RealVector probe = c;
    for (int k = -2; k <= 2; ++k) {
      probe(i) = c(i) + k * h;
      num += k * loss(instance, probe);
    }
    const double slope = num / (10.0 * h);
    CHECK(grad(i) == doctest::Approx(slope).epsilon(1e-4));
  }
}

TEST_CASE("gradient is symmetric on the symmetric instance") {
  const auto instance = xx_zi_instance(0.8, 0.8);
  for (double c0 : {0.2, -0.7, 1.3}) {
    RealVector c(2);
    c << c0, c0;
    const RealVector g = gradient_fd(instance, c);
    CHECK(g(0) == doctest::Approx(g(1)).epsilon(1e-8));
  }
}

TEST_CASE("gradient nearly vanishes at a converged interior optimum") {
  const auto instance = xx_zi_instance(0.5, 0.5);
  const MaxEntState state = solve(instance);
  REQUIRE(state.converged);
  CHECK(gradient_fd(instance, state.coefficients).norm() < 1e-3);
}

TEST_CASE("solve recovers the printed feasible-point state") {
  const auto instance = xx_zi_instance(0.5, 0.5);
  const MaxEntState state = solve(instance);
  CHECK(state.converged);
  CHECK(state.loss <= 1e-8);

  const Matrix expected = Matrix::Identity(4, 4) / 4.0 +
                          (pauli_to_dense(PauliTerm("XX", 1.0)) +
                           pauli_to_dense(PauliTerm("ZI", 1.0))) /
                              8.0;
  CHECK((state.rho.matrix() - expected).cwiseAbs().maxCoeff() < 2e-2);

  CHECK(state.coefficients(0) ==
        doctest::Approx(-kFittedCoefficient).epsilon(1e-2));
  CHECK(state.coefficients(1) ==
        doctest::Approx(-kFittedCoefficient).epsilon(1e-2));
}

TEST_CASE("solve lands on the boundary for the infeasible point") {
  const auto instance = xx_zi_instance(2.0, 2.0);
  const MaxEntState state = solve(instance);
  CHECK_FALSE(state.converged);
  const double limit = std::sqrt(2.0) / 2.0;
  CHECK(std::abs(state.achieved(0) - limit) < 2e-2);
  CHECK(std::abs(state.achieved(1) - limit) < 2e-2);
}

TEST_CASE("solve converges on random feasible instances") {
  auto rng = rng_for(29);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 5);
    const auto instance = random_feasible(rng, n, m);
    const MaxEntState state = solve(instance);
    CHECK(state.converged);
    CHECK(state.loss <= 1e-8);
    CHECK((instance.targets() - state.achieved).cwiseAbs().maxCoeff() <=
          std::sqrt(1e-8));
  }
}

TEST_CASE("MaxEntState invariants: loss and rho are consistent") {
  const auto instance = xx_zi_instance(0.5, 0.5);
  const MaxEntState state = solve(instance);

  double recomputed = 0.0;
  for (int i = 0; i < instance.size(); ++i) {
    const double achieved =
        expectation(state.rho, instance.observables()[static_cast<size_t>(i)]);
    const double delta = instance.targets()(i) - achieved;
    recomputed += delta * delta;
  }
  CHECK(state.loss == doctest::Approx(recomputed).epsilon(1e-12));

  Matrix h = Matrix::Zero(4, 4);
  for (int i = 0; i < instance.size(); ++i)
    h += state.coefficients(i) *
         instance.observables()[static_cast<size_t>(i)].dense();
  CHECK((state.rho.matrix() - gibbs_state(h).matrix()).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("recorded history is monotone non-increasing") {
  const auto feasible = solve(xx_zi_instance(0.5, 0.5));
  const auto infeasible = solve(xx_zi_instance(2.0, 2.0));
  for (const auto* state : {&feasible, &infeasible})
    for (size_t i = 1; i < state->objective_history.size(); ++i)
      CHECK(state->objective_history[i] <= state->objective_history[i - 1]);
}

TEST_CASE("solve is deterministic for a fixed seed") {
  const auto instance = xx_zi_instance(2.0, 2.0);
  SolverConfig config;
  config.seed = 12345;
  const MaxEntState a = solve(instance, config);
  const MaxEntState b = solve(instance, config);
  CHECK(a.iterations == b.iterations);
  CHECK(a.converged == b.converged);
  CHECK(a.restart_index == b.restart_index);
  CHECK((a.coefficients - b.coefficients).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.loss == b.loss);

  SolverConfig other = config;
  other.seed = 999;
  const MaxEntState c = solve(instance, other);
  // Different seeds still land on the same boundary point.
  CHECK((a.achieved - c.achieved).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("plain gradient descent also solves the feasible golden case") {
  SolverConfig config;
  config.optimizer = Optimizer::GradientDescent;
  config.max_iters = 5000;
  const MaxEntState state = solve(xx_zi_instance(0.5, 0.5), config);
  CHECK(state.converged);
}

TEST_CASE("coefficient cap saturates and is reported") {
  SolverConfig config;
  config.coeff_cap = 0.3;
  const MaxEntState state = solve(xx_zi_instance(2.0, 2.0), config);
  CHECK(state.cap_saturated);
  CHECK(state.coefficients.cwiseAbs().maxCoeff() <= 0.3 + 1e-12);
}

TEST_CASE("non-finite loss raises a numerical breakdown error") {
  Matrix huge = Matrix::Zero(2, 2);
  huge(0, 0) = 1e160;
  huge(1, 1) = -1e160;
  std::vector<ObservableOperator> obs;
  obs.emplace_back(huge);
  RealVector targets(1);
  targets << 0.0;
  const CompatibilityInstance instance(1, std::move(obs), targets);
  CHECK_THROWS_AS(solve(instance), NumericalBreakdownError);
}

TEST_CASE("solver config is validated") {
  SolverConfig config;
  config.epsilon = 0.0;
  CHECK_THROWS_AS(solve(xx_zi_instance(0.5, 0.5), config),
                  InvalidInstanceError);
  config = SolverConfig{};
  config.restarts = 0;
  CHECK_THROWS_AS(solve(xx_zi_instance(0.5, 0.5), config),
                  InvalidInstanceError);
}

TEST_CASE("spectral box violations flag out-of-range targets") {
  const auto outside = xx_zi_instance(2.0, 0.3);
  const auto inside = xx_zi_instance(0.5, 0.3);
  CHECK(outside.spectral_box_violations() == std::vector<int>{0});
  CHECK(inside.spectral_box_violations().empty());
}

TEST_CASE("instance construction validates shapes and values") {
  std::vector<ObservableOperator> obs;
  obs.emplace_back(std::vector<PauliTerm>{PauliTerm("XX", 1.0)}, 2);
  RealVector two(2);
  two << 0.1, 0.2;
  CHECK_THROWS_AS(CompatibilityInstance(2, obs, two), InvalidInstanceError);
  RealVector bad(1);
  bad << std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(CompatibilityInstance(2, obs, bad), InvalidInstanceError);
  CHECK_THROWS_AS(
      CompatibilityInstance(3, obs, RealVector::Zero(1)),
      InvalidInstanceError);
}
