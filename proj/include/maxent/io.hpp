#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "maxent/marginal.hpp"
#include "maxent/qite.hpp"

namespace maxent {

using Json = nlohmann::json;

inline constexpr const char* kSchemaName = "maxent-compat/v1";

Json load_json_file(const std::string& path);

// Parsers throw InvalidInstanceError with the offending field named.
ObservableOperator parse_operator(const Json& j, int expected_n = -1);
CompatibilityInstance parse_instance(const Json& j);
MarginalInstance parse_marginal(const Json& j);
/// Optional "reference" dense state in a marginal or instance file, used
/// for fidelity reporting.
std::optional<DensityMatrix> parse_reference(const Json& j);
std::pair<ObservableOperator, ObservableOperator> parse_range_pair(const Json& j);
std::vector<PauliTerm> parse_qite_hamiltonian(const Json& j, int& n_qubits);

Json operator_to_json(const ObservableOperator& op);
Json dense_to_json(const Matrix& m);
Matrix dense_from_json(const Json& j);

/// Serialization with sorted keys and %.17g floats, so equal values always
/// produce identical bytes.
std::string canonical_dump(const Json& j, int indent = -1);

/// FNV-1a 64-bit digest, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace maxent
