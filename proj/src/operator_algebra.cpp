#include "maxent/operator_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kStateTol = 1e-10;

Matrix densify(const std::vector<PauliTerm>& terms, int n_qubits) {
  const Index dim = Index{1} << n_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& term : terms) {
    if (term.n_qubits() != n_qubits)
      throw InvalidInstanceError("Pauli term length " +
                                 std::to_string(term.n_qubits()) +
                                 " does not match qubit count " +
                                 std::to_string(n_qubits));
    out += pauli_to_dense(term);
  }
  return out;
}

// Bit position (from the LSB) of 1-based qubit q in an n-qubit index.
inline int bit_of(int qubit, int n_qubits) { return n_qubits - qubit; }

int first_term_n(const std::vector<PauliTerm>& terms) {
  if (terms.empty())
    throw InvalidInstanceError("observable has no Pauli terms");
  return terms.front().n_qubits();
}

}  // namespace

int qubit_count_for_dim(Index dim) {
  int n = 0;
  Index d = dim;
  while (d > 1 && (d & 1) == 0) {
    d >>= 1;
    ++n;
  }
  if (d != 1 || n < 1)
    throw InvalidInstanceError("dimension " + std::to_string(dim) +
                               " is not 2^n with n >= 1");
  return n;
}

ObservableOperator::ObservableOperator(Matrix dense)
    : n_qubits_(qubit_count_for_dim(dense.rows())), dense_(std::move(dense)) {
  if (dense_.rows() != dense_.cols())
    throw InvalidInstanceError("observable matrix is not square");
  if (hermiticity_error(dense_) > kHermTol)
    throw InvalidInstanceError("observable is not Hermitian to 1e-12");
}

ObservableOperator::ObservableOperator(std::vector<PauliTerm> terms)
    : n_qubits_(first_term_n(terms)),
      dense_(densify(terms, n_qubits_)),
      terms_(std::move(terms)) {}

ObservableOperator::ObservableOperator(std::vector<PauliTerm> terms,
                                       int n_qubits)
    : n_qubits_(n_qubits),
      dense_(densify(terms, n_qubits)),
      terms_(std::move(terms)) {}

SpectralDecomposition hermitian_eig(const Matrix& op) {
  if (hermiticity_error(op) > kHermTol)
    throw InvalidInstanceError("hermitian_eig on a non-Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op);
  if (es.info() != Eigen::Success)
    throw NumericalBreakdownError("eigendecomposition failed to converge");

  SpectralDecomposition out{es.eigenvalues(), es.eigenvectors()};

  // Phase fix: rotate each column so its largest-magnitude entry is real
  // positive, then canonicalize the order inside exact-tie groups.
  const Index dim = out.eigenvectors.rows();
  for (Index j = 0; j < dim; ++j) {
    Index imax = 0;
    out.eigenvectors.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = out.eigenvectors(imax, j);
    if (std::abs(pivot) > 0)
      out.eigenvectors.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
  std::vector<Index> order(static_cast<size_t>(dim));
  for (Index j = 0; j < dim; ++j) order[static_cast<size_t>(j)] = j;
  auto lex_less = [&](Index a, Index b) {
    if (out.eigenvalues(a) != out.eigenvalues(b))
      return out.eigenvalues(a) < out.eigenvalues(b);
    for (Index r = 0; r < dim; ++r) {
      const Complex va = out.eigenvectors(r, a), vb = out.eigenvectors(r, b);
      if (va.real() != vb.real()) return va.real() < vb.real();
      if (va.imag() != vb.imag()) return va.imag() < vb.imag();
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), lex_less);
  RealVector vals(dim);
  Matrix vecs(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    vals(j) = out.eigenvalues(order[static_cast<size_t>(j)]);
    vecs.col(j) = out.eigenvectors.col(order[static_cast<size_t>(j)]);
  }
  out.eigenvalues = std::move(vals);
  out.eigenvectors = std::move(vecs);
  return out;
}

SpectralDecomposition hermitian_eig(const ObservableOperator& op) {
  return hermitian_eig(op.dense());
}

DensityMatrix gibbs_state(const Matrix& hamiltonian) {
  const SpectralDecomposition eig = hermitian_eig(hamiltonian);
  // λ → λ − λ_min keeps every Boltzmann weight in (0,1]; the coefficient
  // norms at infeasible targets would otherwise overflow exp.
  const RealVector shifted =
      eig.eigenvalues.array() - eig.eigenvalues.minCoeff();
  const RealVector weights = (-shifted.array()).exp();
  const double z = weights.sum();
  Matrix rho = eig.eigenvectors * (weights / z).asDiagonal() *
               eig.eigenvectors.adjoint();
  // Symmetrize away the last bits of round-off.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho), DensityMatrix::Trusted{});
}

DensityMatrix gibbs_state(const ObservableOperator& hamiltonian) {
  return gibbs_state(hamiltonian.dense());
}

DensityMatrix::DensityMatrix(Matrix matrix, Trusted)
    : n_qubits_(qubit_count_for_dim(matrix.rows())),
      matrix_(std::move(matrix)) {}

DensityMatrix::DensityMatrix(Matrix matrix)
    : n_qubits_(qubit_count_for_dim(matrix.rows())),
      matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw InvalidInstanceError("density matrix is not square");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTol)
    throw InvalidInstanceError("density matrix is not Hermitian to 1e-10");
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kStateTol)
    throw InvalidInstanceError("density matrix trace deviates from 1 by " +
                               std::to_string(std::abs(trace - 1.0)));
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol)
    throw InvalidInstanceError("density matrix has eigenvalue " +
                               std::to_string(es.eigenvalues().minCoeff()));
}

double expectation(const Matrix& rho, const Matrix& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols())
    throw InvalidInstanceError("expectation: dimension mismatch (" +
                               std::to_string(rho.rows()) + " vs " +
                               std::to_string(op.rows()) + ")");
  // Tr(ρA) = Σ_ij ρ_ji A_ij, without forming the product.
  return rho.transpose().cwiseProduct(op).sum().real();
}

double expectation(const DensityMatrix& rho, const Matrix& op) {
  return expectation(rho.matrix(), op);
}

double expectation(const DensityMatrix& rho, const ObservableOperator& op) {
  return expectation(rho.matrix(), op.dense());
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& keep,
                     int n_qubits) {
  if (keep.empty()) throw InvalidInstanceError("partial_trace: empty keep set");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw InvalidInstanceError("partial_trace: repeated qubit index");
  if (kept.front() < 1 || kept.back() > n_qubits)
    throw InvalidInstanceError("partial_trace: qubit index out of range 1.." +
                               std::to_string(n_qubits));

  std::vector<int> traced;
  for (int q = 1; q <= n_qubits; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const Index dim_keep = Index{1} << nk;
  const Index dim_tr = Index{1} << nt;

  auto compose = [&](Index keep_idx, Index tr_idx) {
    Index full = 0;
    for (int i = 0; i < nk; ++i)
      if (keep_idx >> (nk - 1 - i) & 1)
        full |= Index{1} << bit_of(kept[static_cast<size_t>(i)], n_qubits);
    for (int i = 0; i < nt; ++i)
      if (tr_idx >> (nt - 1 - i) & 1)
        full |= Index{1} << bit_of(traced[static_cast<size_t>(i)], n_qubits);
    return full;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (Index r = 0; r < dim_keep; ++r)
    for (Index c = 0; c < dim_keep; ++c)
      for (Index t = 0; t < dim_tr; ++t)
        out(r, c) += rho(compose(r, t), compose(c, t));
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  return DensityMatrix(partial_trace(rho.matrix(), keep, rho.n_qubits()));
}

Matrix embed_local(const Matrix& op, const std::vector<int>& sites,
                   int n_total) {
  if (sites.empty()) throw InvalidInstanceError("embed_local: empty site set");
  if (!std::is_sorted(sites.begin(), sites.end()) ||
      std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw InvalidInstanceError("embed_local: sites must be strictly ascending");
  if (sites.front() < 1 || sites.back() > n_total)
    throw InvalidInstanceError("embed_local: site out of range 1.." +
                               std::to_string(n_total));
  const int ns = static_cast<int>(sites.size());
  if (op.rows() != (Index{1} << ns) || op.rows() != op.cols())
    throw InvalidInstanceError("embed_local: operator dimension " +
                               std::to_string(op.rows()) +
                               " does not match " + std::to_string(ns) +
                               " sites");

  const Index dim = Index{1} << n_total;
  Index site_mask = 0;
  for (int s : sites) site_mask |= Index{1} << bit_of(s, n_total);

  auto local_index = [&](Index full) {
    Index loc = 0;
    for (int i = 0; i < ns; ++i)
      if (full >> bit_of(sites[static_cast<size_t>(i)], n_total) & 1)
        loc |= Index{1} << (ns - 1 - i);
    return loc;
  };

  Matrix out = Matrix::Zero(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const Index rest = r & ~site_mask;
    const Index lr = local_index(r);
    for (Index lc = 0; lc < op.cols(); ++lc) {
      if (op(lr, lc) == Complex(0, 0)) continue;
      Index c = rest;
      for (int i = 0; i < ns; ++i)
        if (lc >> (ns - 1 - i) & 1)
          c |= Index{1} << bit_of(sites[static_cast<size_t>(i)], n_total);
      out(r, c) = op(lr, lc);
    }
  }
  return out;
}

ObservableOperator embed_local(const ObservableOperator& op,
                               const std::vector<int>& sites, int n_total) {
  if (op.terms()) {
    // Keep the Pauli form: scatter the local letters onto the global string.
    std::vector<PauliTerm> global;
    for (const auto& term : *op.terms()) {
      std::string letters(static_cast<size_t>(n_total), 'I');
      if (term.n_qubits() != static_cast<int>(sites.size()))
        throw InvalidInstanceError("embed_local: term length mismatch");
      for (size_t i = 0; i < sites.size(); ++i)
        letters[static_cast<size_t>(sites[i] - 1)] = term.letters[i];
      global.emplace_back(std::move(letters), term.weight);
    }
    return ObservableOperator(std::move(global), n_total);
  }
  return ObservableOperator(embed_local(op.dense(), sites, n_total));
}

}  // namespace maxent
