#pragma once

#include <stdexcept>
#include <string>

namespace maxent {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad dimensions, non-Hermitian operators, invalid Pauli
/// letters, targets of the wrong length, non-probability targets, ...
class InvalidInstanceError : public Error {
 public:
  explicit InvalidInstanceError(const std::string& what) : Error(what) {}
};

/// NaN/Inf appeared where it cannot be recovered from (e.g. in the loss).
class NumericalBreakdownError : public Error {
 public:
  explicit NumericalBreakdownError(const std::string& what) : Error(what) {}
};

/// The witness construction could not certify incompatibility. The verdict
/// is "undecided", not "compatible"; callers may retry with another seed.
class InconclusiveWitnessError : public Error {
 public:
  explicit InconclusiveWitnessError(const std::string& what) : Error(what) {}
};

/// Two marginals disagree on their shared qubits. Carries the offending
/// pair of part indices (0-based) for reporting.
class OverlapMismatchError : public Error {
 public:
  OverlapMismatchError(const std::string& what, int part_a, int part_b,
                       double distance)
      : Error(what), part_a(part_a), part_b(part_b), distance(distance) {}
  int part_a;
  int part_b;
  double distance;
};

}  // namespace maxent
