#pragma once

#include <optional>
#include <vector>

#include "maxent/linalg.hpp"
#include "maxent/pauli.hpp"

namespace maxent {

/// A Hermitian observable on 2^n dimensions, stored dense. When built from
/// Pauli terms the term list is kept alongside for I/O fidelity.
class ObservableOperator {
 public:
  /// Dense Hermitian matrix; throws InvalidInstanceError when the relative
  /// Hermiticity deviation exceeds 1e-12 or the dimension is not 2^n.
  explicit ObservableOperator(Matrix dense);

  /// Sum of weighted Pauli strings, densified on construction.
  explicit ObservableOperator(std::vector<PauliTerm> terms);
  ObservableOperator(std::vector<PauliTerm> terms, int n_qubits);

  Index dim() const { return dense_.rows(); }
  int n_qubits() const { return n_qubits_; }
  const Matrix& dense() const { return dense_; }
  const std::optional<std::vector<PauliTerm>>& terms() const { return terms_; }

 private:
  int n_qubits_;
  Matrix dense_;
  std::optional<std::vector<PauliTerm>> terms_;
};

/// A density matrix: Hermitian to 1e-10, unit trace to 1e-10, PSD to −1e-10.
class DensityMatrix {
 public:
  /// Tag for construction paths where the invariants hold by construction
  /// (e.g. a Gibbs state assembled from positive normalized weights).
  struct Trusted {};

  explicit DensityMatrix(Matrix matrix);
  DensityMatrix(Matrix matrix, Trusted);

  Index dim() const { return matrix_.rows(); }
  int n_qubits() const { return n_qubits_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  int n_qubits_;
  Matrix matrix_;
};

/// Eigen-decomposition of a Hermitian matrix with a deterministic ordering:
/// eigenvalues ascending, degenerate columns phase-fixed (largest-magnitude
/// entry made real positive) and sorted lexicographically.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;  // columns

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }
};

SpectralDecomposition hermitian_eig(const Matrix& op);
SpectralDecomposition hermitian_eig(const ObservableOperator& op);

/// ρ = e^{−H}/Tr(e^{−H}) through the spectral decomposition, with the
/// eigenvalue shift λ → λ − λ_min applied before exponentiation so large
/// coefficient norms cannot overflow.
DensityMatrix gibbs_state(const Matrix& hamiltonian);
DensityMatrix gibbs_state(const ObservableOperator& hamiltonian);

/// Tr(ρA) with the imaginary residue (< 1e-10 for Hermitian inputs)
/// discarded. Throws on dimension mismatch.
double expectation(const DensityMatrix& rho, const Matrix& op);
double expectation(const Matrix& rho, const Matrix& op);
double expectation(const DensityMatrix& rho, const ObservableOperator& op);

/// Reduced state on `keep` (1-based, any order; result ordered ascending).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);
Matrix partial_trace(const Matrix& rho, const std::vector<int>& keep,
                     int n_qubits);

/// Embed an operator acting on the qubits `sites` (1-based, strictly
/// ascending; site k of the local operator is sites[k]) into n_total qubits,
/// tensoring identity elsewhere.
Matrix embed_local(const Matrix& op, const std::vector<int>& sites,
                   int n_total);
ObservableOperator embed_local(const ObservableOperator& op,
                               const std::vector<int>& sites, int n_total);

}  // namespace maxent
