#include "maxent/povm.hpp"

#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

constexpr double kLogFloor = 1e-300;

Matrix assemble_model(const CompatibilityInstance& instance,
                      const RealVector& c) {
  Matrix h = Matrix::Zero(instance.dim(), instance.dim());
  for (int i = 0; i < instance.size(); ++i)
    h += c(i) * instance.observables()[static_cast<size_t>(i)].dense();
  return h;
}

}  // namespace

PovmSet::PovmSet(int n_qubits, std::vector<ObservableOperator> elements)
    : n_qubits_(n_qubits), elements_(std::move(elements)) {
  validate();
}

void PovmSet::validate() const {
  if (elements_.empty()) throw InvalidInstanceError("POVM has no elements");
  const Index dim = Index{1} << n_qubits_;
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& e : elements_) {
    if (e.dim() != dim)
      throw InvalidInstanceError("POVM element dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e.dense(),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw InvalidInstanceError("POVM element has eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()));
    sum += e.dense();
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidInstanceError("POVM elements do not sum to identity");

  // Informational completeness: the elements must span the full Hermitian
  // space, i.e. their Gram matrix has rank 4^n.
  const int k = static_cast<int>(elements_.size());
  RealMatrix gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram(i, j) = (elements_[static_cast<size_t>(i)].dense().adjoint() *
                    elements_[static_cast<size_t>(j)].dense())
                       .trace()
                       .real();
  Eigen::FullPivLU<RealMatrix> lu(gram);
  lu.setThreshold(1e-10);
  const Index full = Index{1} << (2 * n_qubits_);
  if (lu.rank() < full)
    throw InvalidInstanceError(
        "POVM is not informationally complete (Gram rank " +
        std::to_string(lu.rank()) + " of " + std::to_string(full) + ")");
}

ProbabilityVector::ProbabilityVector(RealVector p_in) : p(std::move(p_in)) {
  if (p.size() == 0) throw InvalidInstanceError("empty probability vector");
  for (Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < -1e-10 || p(i) > 1.0 + 1e-10)
      throw InvalidInstanceError("probability entry " + std::to_string(i) +
                                 " = " + std::to_string(p(i)) +
                                 " outside [0,1]");
  }
  if (std::abs(p.sum() - 1.0) > 1e-9)
    throw InvalidInstanceError("probabilities sum to " +
                               std::to_string(p.sum()));
}

double ProbabilityVector::entropy() const {
  double h = 0.0;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > 0) h -= p(i) * std::log(p(i));
  return h;
}

PovmSet sic_povm(int n_qubits) {
  if (n_qubits < 1) throw InvalidInstanceError("sic_povm needs n >= 1");

  // Single-qubit tetrahedron: E_k = ¼(I + b_k·σ) with the four even-parity
  // sign patterns of (±1,±1,±1)/√3.
  const double s = 1.0 / std::sqrt(3.0);
  const double bloch[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<Matrix> single;
  for (const auto& b : bloch) {
    Matrix e = 0.25 * (Matrix::Identity(2, 2) + b[0] * pauli_matrix('X') +
                       b[1] * pauli_matrix('Y') + b[2] * pauli_matrix('Z'));
    single.push_back(std::move(e));
  }

  std::vector<Matrix> elements = single;
  for (int q = 1; q < n_qubits; ++q) {
    std::vector<Matrix> next;
    next.reserve(elements.size() * 4);
    for (const auto& left : elements)
      for (const auto& right : single) next.push_back(kron(left, right));
    elements = std::move(next);
  }

  std::vector<ObservableOperator> ops;
  ops.reserve(elements.size());
  for (auto& e : elements) ops.emplace_back(std::move(e));
  return PovmSet(n_qubits, std::move(ops));
}

ProbabilityVector born_probabilities(const DensityMatrix& rho,
                                     const PovmSet& povm) {
  if (rho.dim() != (Index{1} << povm.n_qubits()))
    throw InvalidInstanceError("born_probabilities: dimension mismatch");
  RealVector p(povm.size());
  for (int k = 0; k < povm.size(); ++k)
    p(k) = expectation(rho, povm.elements()[static_cast<size_t>(k)]);
  return ProbabilityVector(std::move(p));
}

double cross_entropy(const ProbabilityVector& data, const RealVector& model) {
  if (data.p.size() != model.size())
    throw InvalidInstanceError("cross_entropy: outcome count mismatch");
  double l = 0.0;
  for (Index k = 0; k < model.size(); ++k)
    l -= data.p(k) * std::log(std::max(model(k), kLogFloor));
  return l;
}

double cross_entropy_loss(const CompatibilityInstance& instance,
                          const RealVector& c) {
  if (c.size() != instance.size())
    throw InvalidInstanceError("coefficient vector length mismatch");
  const ProbabilityVector data{instance.targets()};
  const DensityMatrix rho = gibbs_state(assemble_model(instance, c));
  RealVector model(instance.size());
  for (int k = 0; k < instance.size(); ++k)
    model(k) = expectation(rho, instance.observables()[static_cast<size_t>(k)]);
  return cross_entropy(data, model);
}

CompatibilityInstance sic_instance(int n_qubits,
                                   const RealVector& probabilities) {
  const PovmSet povm = sic_povm(n_qubits);
  if (probabilities.size() != povm.size())
    throw InvalidInstanceError("expected " + std::to_string(povm.size()) +
                               " probabilities for the " +
                               std::to_string(n_qubits) + "-qubit SIC-POVM");
  ProbabilityVector checked{probabilities};  // validates
  return CompatibilityInstance(n_qubits, povm.elements(), checked.p);
}

}  // namespace maxent
