#include "maxent/pauli.hpp"

#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

}  // namespace

PauliTerm::PauliTerm(std::string letters_in, double weight_in)
    : letters(std::move(letters_in)), weight(weight_in) {
  if (letters.empty())
    throw InvalidInstanceError("Pauli term has an empty letter string");
  for (char c : letters)
    if (!valid_letter(c))
      throw InvalidInstanceError(std::string("invalid Pauli letter '") + c +
                                 "' (expected I, X, Y or Z)");
  if (!std::isfinite(weight))
    throw InvalidInstanceError("Pauli term weight is not finite");
}

std::vector<int> PauliTerm::support() const {
  std::vector<int> sites;
  for (int k = 0; k < n_qubits(); ++k)
    if (letters[static_cast<size_t>(k)] != 'I') sites.push_back(k + 1);
  return sites;
}

const Matrix& pauli_matrix(char letter) {
  static const Matrix id = Matrix::Identity(2, 2);
  static const Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix y =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix z = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (letter) {
    case 'I':
      return id;
    case 'X':
      return x;
    case 'Y':
      return y;
    case 'Z':
      return z;
    default:
      throw InvalidInstanceError(std::string("invalid Pauli letter '") +
                                 letter + "'");
  }
}

Matrix pauli_to_dense(const PauliTerm& term) {
  if (term.letters.empty())
    throw InvalidInstanceError("Pauli term has an empty letter string");
  Matrix out = pauli_matrix(term.letters[0]);
  for (size_t k = 1; k < term.letters.size(); ++k)
    out = kron(out, pauli_matrix(term.letters[k])).eval();
  return term.weight * out;
}

std::vector<std::string> all_pauli_strings(int k) {
  if (k < 0) throw InvalidInstanceError("negative Pauli string length");
  static const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(1) << (2 * k));
  const size_t total = static_cast<size_t>(1) << (2 * k);
  for (size_t code = 0; code < total; ++code) {
    std::string s(static_cast<size_t>(k), 'I');
    size_t rest = code;
    for (int q = k - 1; q >= 0; --q) {
      s[static_cast<size_t>(q)] = alphabet[rest & 3];
      rest >>= 2;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace maxent
