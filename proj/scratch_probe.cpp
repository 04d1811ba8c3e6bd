#include <cstdio>
#include "maxent/errors.hpp"
#include "maxent/witness.hpp"
#include "maxent/pipeline.hpp"
#include "../tests/support.hpp"

using namespace maxent;
using namespace maxent::testing;

int main() {
  auto rng = rng_for(9);
  Matrix local1 = random_hermitian(rng, 4);
  Matrix local2 = random_hermitian(rng, 4);
  local1 /= Eigen::SelfAdjointEigenSolver<Matrix>(local1, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  local2 /= Eigen::SelfAdjointEigenSolver<Matrix>(local2, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  std::vector<ObservableOperator> obs;
  obs.emplace_back(embed_local(local1, {1, 2}, 3));
  obs.emplace_back(embed_local(local2, {2, 3}, 3));
  RealVector targets(2);
  targets << 0.0, 1.5;
  const CompatibilityInstance inst(3, obs, targets);
  MaxEntState state = solve(inst);
  const int r = rank_profile(state).numerical_rank;
  printf("r=%d primary c=(%.4f,%.4f)\n", r, state.coefficients(0), state.coefficients(1));

  // replicate the loop with diagnostics
  auto mixture = [&](const Matrix& rho) {
    const SpectralDecomposition eig = hermitian_eig(rho);
    Matrix mix = Matrix::Zero(8, 8);
    for (int k = 0; k < r; ++k) {
      auto v = eig.eigenvectors.col(7 - k);
      mix += v * v.adjoint();
    }
    return Matrix(mix / double(r));
  };
  Matrix mix = mixture(state.rho.matrix());
  std::optional<RealVector> warm = state.coefficients;
  SolverConfig cfg;
  for (int pass = 0; pass < 8; ++pass) {
    RealVector face(2);
    for (int i = 0; i < 2; ++i) face(i) = expectation(mix, obs[i].dense());
    const CompatibilityInstance aux(3, obs, face);
    const auto frob = [&](const RealVector& c) {
      Matrix h = Matrix::Zero(8, 8);
      for (int i = 0; i < 2; ++i) h += c(i) * obs[i].dense();
      return (gibbs_state(h).matrix() - mix).squaredNorm();
    };
    MaxEntState refit = solve_with_objective(aux, cfg, frob, cfg.epsilon, warm);
    double dist = trace_distance(refit.rho.matrix(), mix);
    RealVector boosted = refit.coefficients;
    while (true) {
      RealVector trial = 1.6 * boosted;
      if (trial.cwiseAbs().maxCoeff() > 50.0) break;
      Matrix h = Matrix::Zero(8, 8);
      for (int i = 0; i < 2; ++i) h += trial(i) * obs[i].dense();
      double d = trace_distance(gibbs_state(h).matrix(), mix);
      if (!(d < dist)) break;
      dist = d;
      boosted = trial;
    }
    printf("pass %d: iters=%d dist=%.3e ||c||=%.2f dir=(%+.7f,%+.7f)\n", pass,
           refit.iterations, dist, boosted.norm(), boosted(0) / boosted.norm(),
           boosted(1) / boosted.norm());
    Matrix h = Matrix::Zero(8, 8);
    for (int i = 0; i < 2; ++i) h += boosted(i) * obs[i].dense();
    mix = mixture(gibbs_state(h).matrix());
    warm = boosted;
  }
  return 0;
}
