#pragma once

#include <Eigen/Dense>
#include <complex>

namespace maxent {

using Scalar = double;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Result =
      Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Max-abs deviation of m from its adjoint, relative to the largest entry.
template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return scale > 0 ? dev / scale : dev;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

/// Trace distance (1/2)‖a − b‖₁ between two Hermitian matrices.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Uhlmann fidelity F(ρ,σ) = (Tr √(√ρ σ √ρ))².
inline double fidelity(const Matrix& rho, const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Matrix sqrt_rho =
      es.eigenvectors() *
      es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
      es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> inner(sqrt_rho * sigma * sqrt_rho);
  const double root_sum = inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_sum * root_sum;
}

/// Number of qubits for a dimension that must be a power of two.
int qubit_count_for_dim(Index dim);

/// Uniform double in [0,1) from the high 53 bits of a raw draw; avoids the
/// implementation-defined std::uniform_real_distribution.
template <typename Rng>
double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace maxent
