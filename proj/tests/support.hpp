#pragma once

#include <random>

#include "maxent/operator_algebra.hpp"

namespace maxent::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline double gauss(std::mt19937_64& rng) {
  // Box-Muller on raw-bit uniforms keeps draws identical across compilers.
  const double u1 = std::max(uniform_unit(rng), 1e-300);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline Complex cgauss(std::mt19937_64& rng) {
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

inline Matrix random_hermitian(std::mt19937_64& rng, Index dim) {
  Matrix g(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) g(r, c) = cgauss(rng);
  return 0.5 * (g + g.adjoint()).eval();
}

inline Vector random_unit_vector(std::mt19937_64& rng, Index dim) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = cgauss(rng);
  return v / v.norm();
}

// Full-rank Ginibre state G G† / Tr.
inline DensityMatrix random_density(std::mt19937_64& rng, Index dim) {
  Matrix g(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) g(r, c) = cgauss(rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho);
}

inline std::string random_pauli_string(std::mt19937_64& rng, int n,
                                       bool allow_identity = false) {
  static const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(static_cast<size_t>(n), 'I');
  do {
    for (auto& c : s) c = alphabet[rng() & 3];
  } while (!allow_identity && s.find_first_not_of('I') == std::string::npos);
  return s;
}

inline DensityMatrix pure_state(const Vector& psi) {
  Matrix rho = psi * psi.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho);
}

inline Vector w_state() {
  Vector psi = Vector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  psi(0b100) = a;
  psi(0b010) = a;
  psi(0b001) = a;
  return psi;
}

inline Vector ghz_state() {
  Vector psi = Vector::Zero(8);
  psi(0) = psi(7) = 1.0 / std::sqrt(2.0);
  return psi;
}

inline Vector bell_state() {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return psi;
}

}  // namespace maxent::testing
