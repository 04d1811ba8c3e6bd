#include "maxent/qite.hpp"

#include <algorithm>
#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

// Bit position (from the LSB) of 1-based qubit q on a w-qubit register.
inline int bit_of(int qubit, int width) { return width - qubit; }

// Pair each system qubit of the term with its ancilla, interleaved
// (t₁, t₁+n, t₂, t₂+n, …), then keep the first D entries. With D ≥ 2K this
// is exactly the pairs; smaller D drops trailing qubits and the step can no
// longer capture the full correlation.
std::vector<int> step_support(const std::vector<int>& system_support,
                              int n_system, int budget) {
  std::vector<int> interleaved;
  for (int t : system_support) {
    interleaved.push_back(t);
    interleaved.push_back(t + n_system);
  }
  if (static_cast<int>(interleaved.size()) > budget)
    interleaved.resize(static_cast<size_t>(budget));
  std::sort(interleaved.begin(), interleaved.end());
  return interleaved;
}

Matrix hermitian_exp(const Matrix& h, double factor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvectors() *
         (factor * es.eigenvalues().array()).exp().matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

Matrix unitary_exp(const Matrix& h, double angle) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector phases =
      (Complex(0, -angle) * es.eigenvalues().cast<Complex>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

int QiteConfig::steps() const {
  return static_cast<int>(std::lround((beta / 2.0) / dtau));
}

void QiteConfig::validate() const {
  if (!(beta > 0) || !(dtau > 0))
    throw InvalidInstanceError("beta and dtau must be positive");
  if (unitary_support < 2)
    throw InvalidInstanceError("unitary support must cover at least one pair");
  const int n = steps();
  if (n < 1 || std::abs(n * dtau - beta / 2.0) > 1e-12)
    throw InvalidInstanceError(
        "the Trotter schedule requires beta/2 to be an integer number of "
        "dtau steps");
}

Vector tfd_initial(int n_system) {
  if (n_system < 1) throw InvalidInstanceError("tfd_initial needs n >= 1");
  const Index half = Index{1} << n_system;
  Vector psi = Vector::Zero(half * half);
  const double amp = 1.0 / std::sqrt(static_cast<double>(half));
  for (Index i = 0; i < half; ++i) psi(i * half + i) = amp;
  return psi;
}

Vector apply_on_qubits(const Vector& psi, const Matrix& op,
                       const std::vector<int>& qubits, int n_total) {
  const int s = static_cast<int>(qubits.size());
  if (s == 0) throw InvalidInstanceError("apply_on_qubits: empty qubit set");
  if (!std::is_sorted(qubits.begin(), qubits.end()) ||
      std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
    throw InvalidInstanceError("apply_on_qubits: qubits must be ascending");
  if (qubits.front() < 1 || qubits.back() > n_total)
    throw InvalidInstanceError("apply_on_qubits: qubit out of range");
  const Index dlocal = Index{1} << s;
  if (op.rows() != dlocal || op.cols() != dlocal)
    throw InvalidInstanceError("apply_on_qubits: operator dimension mismatch");
  if (psi.size() != (Index{1} << n_total))
    throw InvalidInstanceError("apply_on_qubits: state dimension mismatch");

  Index support_mask = 0;
  std::vector<Index> bit(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) {
    bit[static_cast<size_t>(i)] =
        Index{1} << bit_of(qubits[static_cast<size_t>(i)], n_total);
    support_mask |= bit[static_cast<size_t>(i)];
  }

  Vector out(psi.size());
  Vector local(dlocal), transformed(dlocal);
  for (Index base = 0; base < psi.size(); ++base) {
    if (base & support_mask) continue;
    for (Index l = 0; l < dlocal; ++l) {
      Index idx = base;
      for (int i = 0; i < s; ++i)
        if (l >> (s - 1 - i) & 1) idx |= bit[static_cast<size_t>(i)];
      local(l) = psi(idx);
    }
    transformed.noalias() = op * local;
    for (Index l = 0; l < dlocal; ++l) {
      Index idx = base;
      for (int i = 0; i < s; ++i)
        if (l >> (s - 1 - i) & 1) idx |= bit[static_cast<size_t>(i)];
      out(idx) = transformed(l);
    }
  }
  return out;
}

QiteStepResult qite_step(const Vector& psi, const PauliTerm& term,
                         const QiteConfig& config, int n_system) {
  config.validate();
  if (term.n_qubits() != n_system)
    throw InvalidInstanceError("term length does not match the system size");
  if (psi.size() != (Index{1} << (2 * n_system)))
    throw InvalidInstanceError("statevector is not on 2n qubits");

  const std::vector<int> system_support = term.support();
  if (system_support.empty() || term.weight == 0.0) {
    // h ∝ I only renormalizes; the step is exactly the identity.
    const double c = std::exp(-2.0 * config.dtau * term.weight);
    return {psi, PauliExpansion{{}, RealVector(0)}, c};
  }

  // Local dense term on its system support.
  std::string local_letters;
  for (int t : system_support)
    local_letters.push_back(term.letters[static_cast<size_t>(t - 1)]);
  const Matrix h_local =
      pauli_to_dense(PauliTerm(local_letters, term.weight));

  // c = ⟨ψ|e^{−2Δτ h}|ψ⟩.
  const Matrix decay = hermitian_exp(h_local, -2.0 * config.dtau);
  const double c =
      psi.dot(apply_on_qubits(psi, decay, system_support, 2 * n_system))
          .real();
  if (!(c > 0))
    throw NumericalBreakdownError("QITE normalization factor " +
                                  std::to_string(c) + " is not positive");

  const std::vector<int> support =
      step_support(system_support, n_system, config.unitary_support);
  const int d = static_cast<int>(support.size());
  const std::vector<std::string> strings = all_pauli_strings(d);
  const Index m = static_cast<Index>(strings.size()) - 1;  // identity dropped

  // Columns σ_I|ψ⟩; then S = V†V and b from one extra matvec.
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> v(psi.size(), m);
  for (Index i = 0; i < m; ++i) {
    const Matrix sigma =
        pauli_to_dense(PauliTerm(strings[static_cast<size_t>(i) + 1], 1.0));
    v.col(i) = apply_on_qubits(psi, sigma, support, 2 * n_system);
  }
  const Matrix s_matrix = v.adjoint() * v;
  const Vector h_psi =
      apply_on_qubits(psi, h_local, system_support, 2 * n_system);
  const RealVector b =
      -2.0 / std::sqrt(c) * (v.adjoint() * h_psi).imag();

  // (S + Sᵀ) = 2·Re S for Hermitian S; minimum-norm least squares with
  // singular values below 1e-10·σ_max truncated.
  const RealMatrix lhs = 2.0 * s_matrix.real();
  Eigen::BDCSVD<RealMatrix> svd(lhs,
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const RealVector a = svd.solve(-b);

  Matrix generator = Matrix::Zero(Index{1} << d, Index{1} << d);
  for (Index i = 0; i < m; ++i)
    generator +=
        a(i) * pauli_to_dense(PauliTerm(strings[static_cast<size_t>(i) + 1], 1.0));
  const Matrix unitary = unitary_exp(generator, config.dtau);

  Vector next = apply_on_qubits(psi, unitary, support, 2 * n_system);
  next /= next.norm();
  return {std::move(next), PauliExpansion{support, a}, c};
}

QiteRun prepare_thermal(const std::vector<PauliTerm>& terms,
                        const QiteConfig& config) {
  config.validate();
  if (terms.empty())
    throw InvalidInstanceError("prepare_thermal needs at least one term");
  const int n = terms.front().n_qubits();
  for (const auto& t : terms)
    if (t.n_qubits() != n)
      throw InvalidInstanceError("terms act on differing system sizes");

  bool truncated = false;
  for (const auto& t : terms)
    if (2 * static_cast<int>(t.support().size()) > config.unitary_support)
      truncated = true;

  // N sweeps of Δτ per term give e^{−(β/2)H}|φ₀⟩ up to Trotter error; the
  // ancilla trace then yields e^{−βH}/Tr.
  Vector psi = tfd_initial(n);
  std::vector<std::vector<PauliExpansion>> expansions;
  const int n_steps = config.steps();
  for (int step = 0; step < n_steps; ++step) {
    std::vector<PauliExpansion> row;
    for (const auto& term : terms) {
      QiteStepResult result = qite_step(psi, term, config, n);
      psi = std::move(result.psi);
      row.push_back(std::move(result.expansion));
    }
    expansions.push_back(std::move(row));
  }

  std::vector<int> keep(static_cast<size_t>(n));
  for (int q = 1; q <= n; ++q) keep[static_cast<size_t>(q - 1)] = q;
  const Matrix full = psi * psi.adjoint();
  Matrix reduced = partial_trace(full, keep, 2 * n);
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  return QiteRun{DensityMatrix(std::move(reduced)), config,
                 std::move(expansions), truncated};
}

}  // namespace maxent
