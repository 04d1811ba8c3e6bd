#include "maxent/witness.hpp"

#include <cmath>
#include <limits>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

Matrix assemble(const CompatibilityInstance& instance, const RealVector& w) {
  Matrix h = Matrix::Zero(instance.dim(), instance.dim());
  for (int i = 0; i < instance.size(); ++i)
    h += w(i) * instance.observables()[static_cast<size_t>(i)].dense();
  return h;
}

// The achieved point must sit on the hyperplane Σ w_i x_i = E_g, otherwise
// the optimizer stopped short of the boundary and w is not a supporting
// normal.
void check_supporting(const RealVector& w, const RealVector& boundary_point,
                      double ground_energy) {
  const double residual =
      std::abs(w.dot(boundary_point) - ground_energy);
  if (residual > 1e-4 * (1.0 + std::abs(ground_energy)))
    throw InconclusiveWitnessError(
        "boundary point is off the candidate hyperplane (residual " +
        std::to_string(residual) + "); retry with a different seed or a "
        "larger coefficient cap");
}

Witness finish_witness(const CompatibilityInstance& instance,
                       const RealVector& w,
                       const RealVector& boundary_point) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(assemble(instance, w),
                                           Eigen::EigenvaluesOnly);
  Witness out;
  out.coefficients = w;
  out.ground_energy = es.eigenvalues().minCoeff();
  out.target_energy = w.dot(instance.targets());
  out.margin = out.ground_energy - out.target_energy;
  check_supporting(w, boundary_point, out.ground_energy);
  if (!(out.margin > 0))
    throw InconclusiveWitnessError(
        "witness margin " + std::to_string(out.margin) +
        " is not positive; the targets could not be separated");
  return out;
}

}  // namespace

RankProfile rank_profile(const DensityMatrix& rho, double eta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                           Eigen::EigenvaluesOnly);
  RankProfile out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eta = eta;
  const double top = out.eigenvalues(0);
  out.numerical_rank = 0;
  for (Index i = 0; i < out.eigenvalues.size(); ++i)
    if (out.eigenvalues(i) > eta * top) ++out.numerical_rank;
  return out;
}

RankProfile rank_profile(const MaxEntState& state, double eta) {
  return rank_profile(state.rho, eta);
}

Witness witness_from_boundary(const CompatibilityInstance& instance,
                              const MaxEntState& state) {
  return finish_witness(instance, state.coefficients, state.achieved);
}

namespace {

// Equal mixture over the r dominant eigenvectors: the maximum entropy state
// of the (numerical) ground space, the generalization of the two-point
// mixture to larger flat faces.
Matrix dominant_mixture(const Matrix& rho, int r) {
  const SpectralDecomposition eig = hermitian_eig(rho);
  const Index dim = rho.rows();
  Matrix mix = Matrix::Zero(dim, dim);
  for (int k = 0; k < r; ++k) {
    const auto v = eig.eigenvectors.col(dim - 1 - k);
    mix += v * v.adjoint();
  }
  mix /= static_cast<double>(r);
  return 0.5 * (mix + mix.adjoint());
}

}  // namespace

Witness witness_degenerate(const CompatibilityInstance& instance,
                           const MaxEntState& state,
                           const SolverConfig& config, double eta) {
  const int r = rank_profile(state.rho, eta).numerical_rank;

  // Matching the m target expectations alone leaves the refit free inside
  // the ground space (a tilted Hamiltonian with unequal weights reproduces
  // the same expectations), so each pass matches the mixture itself:
  // minimize ‖ρ(w″) − ρ″‖²_F over the coefficient span. The mixture is then
  // rebuilt from the refit state and the fit repeated until self-consistent,
  // since the starting state inherits the stalled solver's slightly rotated
  // ground space.
  SolverConfig aux_config = config;
  aux_config.objective = Objective::Squared;
  // The fit only has to settle the direction; the ray boost below covers
  // the scale, so a short budget per pass suffices.
  aux_config.max_iters = std::min(config.max_iters, 300);

  Matrix mix = dominant_mixture(state.rho.matrix(), r);
  std::optional<RealVector> warm = state.coefficients;
  double mix_distance = std::numeric_limits<double>::infinity();
  std::optional<MaxEntState> refit;
  for (int pass = 0; pass < 6; ++pass) {
    RealVector face_point(instance.size());
    for (int i = 0; i < instance.size(); ++i)
      face_point(i) = expectation(
          mix, instance.observables()[static_cast<size_t>(i)].dense());
    const CompatibilityInstance aux(instance.n_qubits(),
                                    instance.observables(), face_point);
    const auto frobenius_gap = [&aux, &mix](const RealVector& c) {
      Matrix h = Matrix::Zero(aux.dim(), aux.dim());
      for (int i = 0; i < aux.size(); ++i)
        h += c(i) * aux.observables()[static_cast<size_t>(i)].dense();
      return (gibbs_state(h).matrix() - mix).squaredNorm();
    };
    refit.emplace(solve_with_objective(aux, aux_config, frobenius_gap,
                                       aux_config.epsilon, warm));
    mix_distance = trace_distance(refit->rho.matrix(), mix);

    // The optimum sits at infinite coefficient norm; once the direction is
    // settled, ride the ray outward while the state keeps approaching the
    // mixture (bounded by the coefficient cap).
    RealVector boosted = refit->coefficients;
    while (true) {
      RealVector trial = 1.6 * boosted;
      const double largest = trial.cwiseAbs().maxCoeff();
      if (largest > aux_config.coeff_cap)
        trial *= aux_config.coeff_cap / largest;
      if ((trial - boosted).cwiseAbs().maxCoeff() < 1e-12) break;
      Matrix h = Matrix::Zero(aux.dim(), aux.dim());
      for (int i = 0; i < aux.size(); ++i)
        h += trial(i) * aux.observables()[static_cast<size_t>(i)].dense();
      const double dist = trace_distance(gibbs_state(h).matrix(), mix);
      if (!(dist < mix_distance)) break;
      mix_distance = dist;
      boosted = trial;
    }
    if (boosted != refit->coefficients) {
      Matrix h = Matrix::Zero(aux.dim(), aux.dim());
      for (int i = 0; i < aux.size(); ++i)
        h += boosted(i) * aux.observables()[static_cast<size_t>(i)].dense();
      refit->coefficients = boosted;
      refit->rho = gibbs_state(h);
      for (int i = 0; i < aux.size(); ++i)
        refit->achieved(i) = expectation(
            refit->rho, aux.observables()[static_cast<size_t>(i)]);
    }

    if (mix_distance <= 1e-3) break;
    mix = dominant_mixture(refit->rho.matrix(), r);
    warm = refit->coefficients;
  }

  if (mix_distance > 1e-3)
    throw InconclusiveWitnessError(
        "auxiliary fit of the ground-space mixture did not converge "
        "(trace distance " +
        std::to_string(mix_distance) + ")");

  RealVector face_point(instance.size());
  for (int i = 0; i < instance.size(); ++i)
    face_point(i) = expectation(
        mix, instance.observables()[static_cast<size_t>(i)].dense());
  return finish_witness(instance, refit->coefficients, face_point);
}

WitnessVerification verify_witness(const CompatibilityInstance& instance,
                                   const Witness& witness) {
  const SpectralDecomposition eig =
      hermitian_eig(assemble(instance, witness.coefficients));
  WitnessVerification out;
  out.ground_energy = eig.eigenvalues(0);
  out.target_energy = witness.coefficients.dot(instance.targets());
  out.margin = out.ground_energy - out.target_energy;
  out.certified = out.margin > 0;

  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double tol = 1e-8 * std::max(1.0, scale);
  out.ground_space_dim = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) <= out.ground_energy + tol) ++out.ground_space_dim;
  out.gap = out.ground_space_dim < eig.eigenvalues.size()
                ? eig.eigenvalues(out.ground_space_dim) - out.ground_energy
                : 0.0;
  return out;
}

}  // namespace maxent
