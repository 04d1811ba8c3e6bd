#pragma once

#include <vector>

#include "maxent/operator_algebra.hpp"

namespace maxent {

/// Schedule for the imaginary-time sweep. The register has 2n qubits:
/// system 1..n, ancilla n+1..2n, with ancilla i+n purifying system qubit i.
struct QiteConfig {
  double beta = 1.0;
  double dtau = 0.05;
  int unitary_support = 4;  // D; a K-local term needs D ≥ 2K to be captured

  int steps() const;  // N = (β/2)/Δτ, validated to be integral

  void validate() const;
};

/// The fitted generator of one unitary step, A[m] = Σ_I a_I σ_I on the
/// support qubits. Coefficients follow all_pauli_strings(support.size())
/// with the identity string dropped.
struct PauliExpansion {
  std::vector<int> support;  // global 1-based qubit indices, ascending
  RealVector coefficients;

  double norm() const { return coefficients.norm(); }
};

/// |φ₀⟩ = 2^{−n/2} Σ_i |i⟩|i⟩, the infinite-temperature thermofield double.
Vector tfd_initial(int n_system);

struct QiteStepResult {
  Vector psi;
  PauliExpansion expansion;
  double norm_factor = 0.0;  // c = ⟨ψ|e^{−2Δτ h}|ψ⟩
};

/// One QITE substep: measure S and b on the current state, solve
/// (S+Sᵀ)a = −b by minimum-norm least squares, and apply e^{−iΔτ A[m]}
/// exactly on the support. `term` acts on system qubits of an n-qubit
/// system; ancillas are paired in automatically up to the configured
/// support size.
QiteStepResult qite_step(const Vector& psi, const PauliTerm& term,
                         const QiteConfig& config, int n_system);

struct QiteRun {
  DensityMatrix rho;
  QiteConfig config;
  // expansions[step][term]
  std::vector<std::vector<PauliExpansion>> expansions;
  bool support_truncated = false;  // some term had D < 2K
};

/// N Trotter sweeps over the terms in input order, then the ancillas are
/// traced out. Terms are weighted Pauli strings on the system qubits; the
/// target state is e^{−βH}/Tr with H = Σ terms.
QiteRun prepare_thermal(const std::vector<PauliTerm>& terms,
                        const QiteConfig& config);

/// Applies a dense operator on the given qubits (1-based, ascending) of an
/// n_total-qubit statevector. Qubit 1 is the most significant bit.
Vector apply_on_qubits(const Vector& psi, const Matrix& op,
                       const std::vector<int>& qubits, int n_total);

}  // namespace maxent
