#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "maxent/instance.hpp"

namespace maxent {

enum class Optimizer { QuasiNewton, GradientDescent };
enum class Objective { Squared, CrossEntropy };

struct SolverConfig {
  double epsilon = 1e-8;    // loss acceptance threshold
  int max_iters = 2000;     // per restart
  double fd_step = 1e-5;    // central-difference step
  int restarts = 5;
  Optimizer optimizer = Optimizer::QuasiNewton;
  Objective objective = Objective::Squared;
  std::uint64_t seed = 0;

  // The optimum runs to infinity at infeasible targets; the cap bounds the
  // coefficient box while still reaching the regime where the Gibbs state is
  // numerically a ground-space projector.
  double coeff_cap = 50.0;

  // Stall rule: stop when the relative loss decrease over `stall_window`
  // accepted iterations falls below `stall_rtol`.
  int stall_window = 20;
  double stall_rtol = 1e-12;

  void validate() const;
};

/// Result of a MaxEnt fit. `loss` is always the squared loss
/// Σ_i (a_i − achieved_i)² regardless of the optimized objective;
/// `objective_history` records the optimized objective per accepted iterate.
struct MaxEntState {
  RealVector coefficients;
  DensityMatrix rho;
  RealVector achieved;
  double loss = 0.0;
  int iterations = 0;
  bool converged = false;
  bool cap_saturated = false;
  int restart_index = 0;
  std::vector<double> objective_history;
};

/// Squared loss f(c) = Σ_i [a_i − Tr(ρ'(c) A_i)]² with ρ'(c) the Gibbs state
/// of Σ c_i A_i.
double loss(const CompatibilityInstance& instance, const RealVector& c);

/// Central finite differences of the squared loss.
RealVector gradient_fd(const CompatibilityInstance& instance,
                       const RealVector& c, double fd_step = 1e-5);

/// Best state over `config.restarts` random initializations (coefficients
/// uniform in [−1,1], deterministic in the seed). Non-convergence is reported
/// through converged=false; a NaN loss raises NumericalBreakdownError.
MaxEntState solve(const CompatibilityInstance& instance,
                  const SolverConfig& config = {});

/// Same optimizer machinery driving an arbitrary smooth objective over the
/// coefficient vector; `stop_below` ends a restart early and `warm_start`
/// replaces the first restart's random initialization. The returned
/// loss/achieved/converged fields are still measured against the instance
/// targets. Backs the degenerate witness refit, where matching the target
/// expectations alone underdetermines the state.
MaxEntState solve_with_objective(
    const CompatibilityInstance& instance, const SolverConfig& config,
    const std::function<double(const RealVector&)>& objective,
    double stop_below, const std::optional<RealVector>& warm_start = {});

}  // namespace maxent
