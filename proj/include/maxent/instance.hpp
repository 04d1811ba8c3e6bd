#pragma once

#include <vector>

#include "maxent/operator_algebra.hpp"

namespace maxent {

/// One compatibility problem: do the targets a_i arise as Tr(ρ A_i) for
/// any density matrix ρ?
class CompatibilityInstance {
 public:
  CompatibilityInstance(int n_qubits, std::vector<ObservableOperator> observables,
                        RealVector targets);

  int n_qubits() const { return n_qubits_; }
  Index dim() const { return Index{1} << n_qubits_; }
  int size() const { return static_cast<int>(observables_.size()); }
  const std::vector<ObservableOperator>& observables() const {
    return observables_;
  }
  const RealVector& targets() const { return targets_; }

  /// Indices of targets outside [λ_min(A_i) − tol, λ_max(A_i) + tol].
  /// A nonempty result means the instance is infeasible before any
  /// optimization; the pipeline still runs, so the certificate carries the
  /// geometric witness rather than a bare box check.
  std::vector<int> spectral_box_violations(double tol = 1e-9) const;

 private:
  int n_qubits_;
  std::vector<ObservableOperator> observables_;
  RealVector targets_;
};

}  // namespace maxent
