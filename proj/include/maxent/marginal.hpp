#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maxent/witness.hpp"

namespace maxent {

/// Repairs small cone violations (eigenvalue clipping + trace
/// renormalization), tolerating inputs printed to few decimals. Violations
/// above `tol` — in Hermiticity, negative eigenvalues, or trace — throw.
DensityMatrix project_to_state(const Matrix& m, double tol = 1e-6);

struct MarginalPart {
  std::vector<int> qubits;  // 1-based, strictly ascending
  DensityMatrix rho;
};

/// A quantum marginal problem: prescribed reduced states on (possibly
/// overlapping) subsystems of an n-qubit register.
class MarginalInstance {
 public:
  MarginalInstance(int n_qubits, std::vector<MarginalPart> parts,
                   double overlap_tol = 1e-6);

  /// Builds from raw matrices, projecting each onto the state cone with
  /// `psd_project_tol` (see project_to_state).
  static MarginalInstance from_raw(
      int n_qubits,
      const std::vector<std::pair<std::vector<int>, Matrix>>& parts,
      double overlap_tol = 1e-6, double psd_project_tol = 1e-6);

  int n_qubits() const { return n_qubits_; }
  const std::vector<MarginalPart>& parts() const { return parts_; }
  double overlap_tol() const { return overlap_tol_; }

  /// Throws OverlapMismatchError naming the first pair of parts whose
  /// reductions onto their shared qubits differ by more than overlap_tol in
  /// trace distance. Such inputs are incompatible before any optimization.
  void check_overlaps() const;

 private:
  int n_qubits_;
  std::vector<MarginalPart> parts_;
  double overlap_tol_;
};

/// The compatibility instance plus the bookkeeping needed to fold witness
/// coefficients back onto the marginal parts.
struct MarginalReduction {
  CompatibilityInstance instance;
  // Per observable: the owning part and the Pauli letters local to it. A
  // string supported in an overlap is attributed to the first part that
  // contains it; the certificate value does not depend on that choice.
  std::vector<int> part_of;
  std::vector<std::string> local_letters;
};

/// Observables = all non-identity Pauli strings supported inside each part,
/// deduplicated across overlaps and embedded globally; targets from the
/// prescribed reduced states. Runs check_overlaps first.
MarginalReduction to_compatibility(const MarginalInstance& minstance);

struct LocalizedWitness {
  // Local Hamiltonian per part, as weighted Pauli terms on the part's qubits.
  std::vector<std::vector<PauliTerm>> local_terms;
  std::vector<double> part_energies;  // Tr(ρ_{S_j} H'_{S_j})
  double total_energy = 0.0;          // Σ_j, equals the witness target energy
  double ground_energy = 0.0;         // E_g of the global assembly
  double margin = 0.0;
};

/// Groups witness coefficients by owning part into local Hamiltonians and
/// recomputes the certificate from the per-part energies.
LocalizedWitness localize_witness(const Witness& witness,
                                  const MarginalInstance& minstance,
                                  const MarginalReduction& reduction);

}  // namespace maxent
