#include "maxent/instance.hpp"

#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

CompatibilityInstance::CompatibilityInstance(
    int n_qubits, std::vector<ObservableOperator> observables,
    RealVector targets)
    : n_qubits_(n_qubits),
      observables_(std::move(observables)),
      targets_(std::move(targets)) {
  if (n_qubits_ < 1)
    throw InvalidInstanceError("instance needs at least one qubit");
  if (observables_.empty())
    throw InvalidInstanceError("instance needs at least one observable");
  if (static_cast<Index>(observables_.size()) != targets_.size())
    throw InvalidInstanceError(
        "instance has " + std::to_string(observables_.size()) +
        " observables but " + std::to_string(targets_.size()) + " targets");
  for (const auto& op : observables_)
    if (op.n_qubits() != n_qubits_)
      throw InvalidInstanceError("observable on " +
                                 std::to_string(op.n_qubits()) +
                                 " qubits in an instance declaring " +
                                 std::to_string(n_qubits_));
  for (Index i = 0; i < targets_.size(); ++i)
    if (!std::isfinite(targets_(i)))
      throw InvalidInstanceError("target " + std::to_string(i) +
                                 " is not finite");
}

std::vector<int> CompatibilityInstance::spectral_box_violations(
    double tol) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(observables_[static_cast<size_t>(i)].dense(),
                                             Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double a = targets_(i);
    if (a < lo - tol || a > hi + tol) out.push_back(i);
  }
  return out;
}

}  // namespace maxent
