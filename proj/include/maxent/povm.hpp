#pragma once

#include <vector>

#include "maxent/instance.hpp"

namespace maxent {

/// An informationally complete POVM: PSD elements summing to identity whose
/// Gram matrix has full rank 4^n.
class PovmSet {
 public:
  PovmSet(int n_qubits, std::vector<ObservableOperator> elements);

  int n_qubits() const { return n_qubits_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<ObservableOperator>& elements() const { return elements_; }

  /// Re-runs the constructor checks (PSD, completeness, Gram rank).
  void validate() const;

 private:
  int n_qubits_;
  std::vector<ObservableOperator> elements_;
};

/// Outcome probabilities: entries in [0,1] to 1e-10, sum 1 to 1e-9.
struct ProbabilityVector {
  RealVector p;

  explicit ProbabilityVector(RealVector p);
  int size() const { return static_cast<int>(p.size()); }

  /// Shannon entropy −Σ p log p (natural log).
  double entropy() const;
};

/// Tensor powers of the single-qubit tetrahedral SIC-POVM
/// {½|ψ_k⟩⟨ψ_k|} with Bloch vectors (±1,±1,±1)/√3 of even parity. 4^n
/// elements, informationally complete by construction.
PovmSet sic_povm(int n_qubits);

/// p_k = Tr(E_k ρ).
ProbabilityVector born_probabilities(const DensityMatrix& rho,
                                     const PovmSet& povm);

/// Cross entropy −Σ_k p_data_k log q_k with the log floored at 1e-300 so
/// finite differences stay smooth near vanishing outcomes.
double cross_entropy(const ProbabilityVector& data, const RealVector& model);

/// The QBM objective L(c) = −Σ_k a_k log Tr(E_k ρ'(c)) for an instance whose
/// observables are POVM elements and whose targets form a probability
/// vector; throws InvalidInstanceError otherwise.
double cross_entropy_loss(const CompatibilityInstance& instance,
                          const RealVector& c);

/// Builds the compatibility instance pairing sic_povm(n) with the given
/// outcome probabilities.
CompatibilityInstance sic_instance(int n_qubits, const RealVector& probabilities);

}  // namespace maxent
