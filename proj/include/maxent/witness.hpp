#pragma once

#include "maxent/solver.hpp"

namespace maxent {

/// Spectrum of a fitted state, descending, with the η-thresholded rank.
struct RankProfile {
  RealVector eigenvalues;  // descending
  int numerical_rank = 0;  // #{λ > eta·λ_max}
  double eta = 1e-3;
};

RankProfile rank_profile(const DensityMatrix& rho, double eta = 1e-3);
RankProfile rank_profile(const MaxEntState& state, double eta = 1e-3);

/// A supporting-hyperplane certificate: every compatible point x satisfies
/// Σ w_i x_i ≥ E_g, so margin = E_g − Σ w_i a_i > 0 proves the targets a
/// are unreachable.
struct Witness {
  RealVector coefficients;
  double ground_energy = 0.0;
  double target_energy = 0.0;
  double margin = 0.0;
};

struct WitnessVerification {
  double ground_energy = 0.0;
  double target_energy = 0.0;
  double margin = 0.0;
  bool certified = false;
  int ground_space_dim = 0;
  double gap = 0.0;  // first eigenvalue above the ground space − E_g
};

/// Non-degenerate path: the witness normal is the stalled solver's
/// coefficient vector. Requires the achieved point to sit on the hyperplane
/// (|Σ w_i b_i − E_g| ≤ 1e-4·(1+|E_g|)) and margin > 0; otherwise throws
/// InconclusiveWitnessError.
Witness witness_from_boundary(const CompatibilityInstance& instance,
                              const MaxEntState& state);

/// Degenerate path: equal mixture ρ″ over the r dominant eigenvectors,
/// auxiliary MaxEnt fit of ρ″'s expectations, witness from the refit
/// coefficients. The refit must reproduce ρ″ (trace distance ≤ 1e-3) or the
/// witness is inconclusive.
Witness witness_degenerate(const CompatibilityInstance& instance,
                           const MaxEntState& state,
                           const SolverConfig& config = {},
                           double eta = 1e-3);

/// Fresh diagonalization of Σ w_i A_i; recomputes the margin and reports
/// the ground-space dimension and first spectral gap.
WitnessVerification verify_witness(const CompatibilityInstance& instance,
                                   const Witness& witness);

}  // namespace maxent
