#pragma once

#include <string>
#include <vector>

#include "maxent/linalg.hpp"

namespace maxent {

/// One weighted Pauli string, e.g. ("XZI", 0.5) on three qubits.
/// Qubit 1 is the leftmost letter and the most significant bit of basis
/// indices, so |100⟩ has qubit 1 excited.
struct PauliTerm {
  std::string letters;  // over {I,X,Y,Z}, length = qubit count
  double weight = 1.0;

  PauliTerm() = default;
  PauliTerm(std::string letters, double weight);

  int n_qubits() const { return static_cast<int>(letters.size()); }

  /// 1-based indices of the non-identity letters.
  std::vector<int> support() const;
};

/// The four single-qubit Pauli matrices, indexed by letter.
const Matrix& pauli_matrix(char letter);

/// weight × (σ_1 ⊗ … ⊗ σ_n) as a dense 2^n matrix.
Matrix pauli_to_dense(const PauliTerm& term);

/// All length-k strings over {I,X,Y,Z} in lexicographic order with
/// I < X < Y < Z ("II.." first). 4^k entries.
std::vector<std::string> all_pauli_strings(int k);

}  // namespace maxent
