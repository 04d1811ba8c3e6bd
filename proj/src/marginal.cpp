#include "maxent/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

void validate_part_qubits(const std::vector<int>& qubits, int n_qubits) {
  if (qubits.empty())
    throw InvalidInstanceError("marginal part with empty qubit set");
  if (!std::is_sorted(qubits.begin(), qubits.end()) ||
      std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
    throw InvalidInstanceError(
        "marginal part qubits must be strictly ascending");
  if (qubits.front() < 1 || qubits.back() > n_qubits)
    throw InvalidInstanceError("marginal part qubit out of range 1.." +
                               std::to_string(n_qubits));
}

// Local 1-based positions of the shared qubits inside a part.
std::vector<int> local_positions(const std::vector<int>& part_qubits,
                                 const std::vector<int>& shared) {
  std::vector<int> out;
  for (int q : shared) {
    const auto it =
        std::find(part_qubits.begin(), part_qubits.end(), q);
    out.push_back(static_cast<int>(it - part_qubits.begin()) + 1);
  }
  return out;
}

}  // namespace

DensityMatrix project_to_state(const Matrix& m, double tol) {
  if (m.rows() != m.cols())
    throw InvalidInstanceError("state matrix is not square");
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol)
    throw InvalidInstanceError("state deviates from Hermitian by " +
                               std::to_string(herm_dev));
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const double neg = std::max(0.0, -es.eigenvalues().minCoeff());
  const double trace_dev = std::abs(sym.trace().real() - 1.0);
  if (neg > tol || trace_dev > tol)
    throw InvalidInstanceError(
        "state violates the PSD-trace-one cone beyond tolerance "
        "(negative part " +
        std::to_string(neg) + ", trace deviation " +
        std::to_string(trace_dev) + ")");
  const RealVector clipped = es.eigenvalues().cwiseMax(0.0);
  Matrix rho = es.eigenvectors() * (clipped / clipped.sum()).asDiagonal() *
               es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho), DensityMatrix::Trusted{});
}

MarginalInstance::MarginalInstance(int n_qubits,
                                   std::vector<MarginalPart> parts,
                                   double overlap_tol)
    : n_qubits_(n_qubits), parts_(std::move(parts)), overlap_tol_(overlap_tol) {
  if (n_qubits_ < 1)
    throw InvalidInstanceError("marginal instance needs n >= 1");
  if (parts_.empty())
    throw InvalidInstanceError("marginal instance has no parts");
  for (const auto& part : parts_) {
    validate_part_qubits(part.qubits, n_qubits_);
    if (part.rho.dim() != (Index{1} << part.qubits.size()))
      throw InvalidInstanceError(
          "marginal state dimension does not match its qubit set");
  }
}

MarginalInstance MarginalInstance::from_raw(
    int n_qubits,
    const std::vector<std::pair<std::vector<int>, Matrix>>& parts,
    double overlap_tol, double psd_project_tol) {
  std::vector<MarginalPart> built;
  built.reserve(parts.size());
  for (const auto& [qubits, raw] : parts)
    built.push_back({qubits, project_to_state(raw, psd_project_tol)});
  return MarginalInstance(n_qubits, std::move(built), overlap_tol);
}

void MarginalInstance::check_overlaps() const {
  for (size_t j = 0; j < parts_.size(); ++j) {
    for (size_t k = j + 1; k < parts_.size(); ++k) {
      std::vector<int> shared;
      std::set_intersection(parts_[j].qubits.begin(), parts_[j].qubits.end(),
                            parts_[k].qubits.begin(), parts_[k].qubits.end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      const Matrix red_j = partial_trace(
          parts_[j].rho.matrix(), local_positions(parts_[j].qubits, shared),
          static_cast<int>(parts_[j].qubits.size()));
      const Matrix red_k = partial_trace(
          parts_[k].rho.matrix(), local_positions(parts_[k].qubits, shared),
          static_cast<int>(parts_[k].qubits.size()));
      const double dist = trace_distance(red_j, red_k);
      if (dist > overlap_tol_)
        throw OverlapMismatchError(
            "marginals of parts " + std::to_string(j) + " and " +
                std::to_string(k) +
                " disagree on their shared qubits (trace distance " +
                std::to_string(dist) + ")",
            static_cast<int>(j), static_cast<int>(k), dist);
    }
  }
}

MarginalReduction to_compatibility(const MarginalInstance& minstance) {
  minstance.check_overlaps();
  const int n = minstance.n_qubits();

  std::vector<ObservableOperator> observables;
  std::vector<double> targets;
  std::vector<int> part_of;
  std::vector<std::string> local_letters;
  std::unordered_map<std::string, bool> seen;

  for (size_t j = 0; j < minstance.parts().size(); ++j) {
    const auto& part = minstance.parts()[j];
    const int k = static_cast<int>(part.qubits.size());
    for (const std::string& local : all_pauli_strings(k)) {
      if (local.find_first_not_of('I') == std::string::npos) continue;
      std::string global(static_cast<size_t>(n), 'I');
      for (int q = 0; q < k; ++q)
        global[static_cast<size_t>(part.qubits[static_cast<size_t>(q)] - 1)] =
            local[static_cast<size_t>(q)];
      if (seen.emplace(global, true).second == false) continue;

      observables.emplace_back(std::vector<PauliTerm>{PauliTerm(global, 1.0)},
                               n);
      targets.push_back(
          expectation(part.rho, pauli_to_dense(PauliTerm(local, 1.0))));
      part_of.push_back(static_cast<int>(j));
      local_letters.push_back(local);
    }
  }

  RealVector t = Eigen::Map<RealVector>(targets.data(),
                                        static_cast<Index>(targets.size()));
  return MarginalReduction{
      CompatibilityInstance(n, std::move(observables), std::move(t)),
      std::move(part_of), std::move(local_letters)};
}

LocalizedWitness localize_witness(const Witness& witness,
                                  const MarginalInstance& minstance,
                                  const MarginalReduction& reduction) {
  const size_t n_parts = minstance.parts().size();
  if (witness.coefficients.size() !=
      static_cast<Index>(reduction.part_of.size()))
    throw InvalidInstanceError(
        "witness length does not match the marginal reduction");

  LocalizedWitness out;
  out.local_terms.resize(n_parts);
  out.part_energies.assign(n_parts, 0.0);

  for (Index i = 0; i < witness.coefficients.size(); ++i) {
    const int j = reduction.part_of[static_cast<size_t>(i)];
    out.local_terms[static_cast<size_t>(j)].emplace_back(
        reduction.local_letters[static_cast<size_t>(i)],
        witness.coefficients(i));
  }
  for (size_t j = 0; j < n_parts; ++j) {
    const auto& part = minstance.parts()[j];
    const Index dim = part.rho.dim();
    Matrix local_h = Matrix::Zero(dim, dim);
    for (const auto& term : out.local_terms[j]) local_h += pauli_to_dense(term);
    out.part_energies[j] = expectation(part.rho, local_h);
    out.total_energy += out.part_energies[j];
  }

  Matrix global = Matrix::Zero(reduction.instance.dim(),
                               reduction.instance.dim());
  for (Index i = 0; i < witness.coefficients.size(); ++i)
    global += witness.coefficients(i) *
              reduction.instance.observables()[static_cast<size_t>(i)].dense();
  Eigen::SelfAdjointEigenSolver<Matrix> es(global, Eigen::EigenvaluesOnly);
  out.ground_energy = es.eigenvalues().minCoeff();
  out.margin = out.ground_energy - out.total_energy;
  return out;
}

}  // namespace maxent
