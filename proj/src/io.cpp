#include "maxent/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "maxent/errors.hpp"
#include "maxent/povm.hpp"

namespace maxent {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInstanceError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int require_n_qubits(const Json& j, int expected) {
  int n = expected;
  if (j.contains("n_qubits")) {
    const Json& field = j.at("n_qubits");
    if (!field.is_number_integer())
      throw InvalidInstanceError("\"n_qubits\" must be an integer");
    n = field.get<int>();
  }
  if (n < 1)
    throw InvalidInstanceError("\"n_qubits\" must be at least 1");
  if (expected >= 1 && n != expected)
    throw InvalidInstanceError("operator declares " + std::to_string(n) +
                               " qubits inside an instance of " +
                               std::to_string(expected));
  return n;
}

void check_schema(const Json& j) {
  if (j.is_object() && j.contains("schema") &&
      j.at("schema") != kSchemaName)
    throw InvalidInstanceError("unsupported schema \"" +
                               j.at("schema").dump() + "\", expected \"" +
                               kSchemaName + "\"");
}

RealVector parse_real_vector(const Json& j, const char* key) {
  if (!j.is_array())
    throw InvalidInstanceError(std::string("\"") + key +
                               "\" must be an array of numbers");
  RealVector out(j.size());
  Index i = 0;
  for (const auto& v : j) {
    if (!v.is_number())
      throw InvalidInstanceError(std::string("\"") + key +
                                 "\" contains a non-number");
    out(i++) = v.get<double>();
  }
  return out;
}

void dump_canonical(const Json& j, std::string& out, int indent, int depth);

void dump_number(const Json& j, std::string& out) {
  if (j.is_number_integer()) {
    out += std::to_string(j.get<std::int64_t>());
  } else if (j.is_number_unsigned()) {
    out += std::to_string(j.get<std::uint64_t>());
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
    out += buf;
  }
}

void newline_indent(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<size_t>(indent * depth), ' ');
}

void dump_canonical(const Json& j, std::string& out, int indent, int depth) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::string:
      out += Json(j.get<std::string>()).dump();
      break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        newline_indent(out, indent, depth + 1);
        dump_canonical(item, out, indent, depth + 1);
      }
      if (!j.empty()) newline_indent(out, indent, depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline_indent(out, indent, depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_canonical(it.value(), out, indent, depth + 1);
      }
      if (!j.empty()) newline_indent(out, indent, depth);
      out += '}';
      break;
    }
    default:
      dump_number(j, out);
      break;
  }
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstanceError("cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInstanceError("JSON parse error in \"" + path +
                               "\": " + e.what());
  }
}

Matrix dense_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInstanceError("\"dense\" must be a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  Matrix out(rows, rows);
  Index r = 0;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<Index>(row.size()) != rows)
      throw InvalidInstanceError("\"dense\" row " + std::to_string(r) +
                                 " is not a length-" + std::to_string(rows) +
                                 " array");
    Index c = 0;
    for (const auto& entry : row) {
      if (!entry.is_array() || entry.size() != 2 ||
          !entry.at(0).is_number() || !entry.at(1).is_number())
        throw InvalidInstanceError("\"dense\" entries must be [re, im] pairs");
      out(r, c) = Complex(entry.at(0).get<double>(),
                          entry.at(1).get<double>());
      ++c;
    }
    ++r;
  }
  return out;
}

Json dense_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ObservableOperator parse_operator(const Json& j, int expected_n) {
  if (!j.is_object())
    throw InvalidInstanceError("operator must be a JSON object");
  const int n = require_n_qubits(j, expected_n);

  std::optional<ObservableOperator> from_terms;
  if (j.contains("terms")) {
    const Json& terms = j.at("terms");
    if (!terms.is_array() || terms.empty())
      throw InvalidInstanceError("\"terms\" must be a non-empty array");
    std::vector<PauliTerm> parsed;
    for (const auto& t : terms) {
      const Json& pauli = require(t, "pauli");
      const Json& weight = require(t, "weight");
      if (!pauli.is_string() || !weight.is_number())
        throw InvalidInstanceError(
            "each term needs a \"pauli\" string and a numeric \"weight\"");
      parsed.emplace_back(pauli.get<std::string>(), weight.get<double>());
      if (parsed.back().n_qubits() != n)
        throw InvalidInstanceError("Pauli string \"" +
                                   pauli.get<std::string>() +
                                   "\" does not have " + std::to_string(n) +
                                   " letters");
    }
    from_terms.emplace(std::move(parsed), n);
  }
  if (j.contains("dense")) {
    ObservableOperator from_dense(dense_from_json(j.at("dense")));
    if (from_dense.n_qubits() != n)
      throw InvalidInstanceError("dense matrix dimension does not match "
                                 "\"n_qubits\"");
    if (from_terms) {
      const double dev = (from_terms->dense() - from_dense.dense())
                             .cwiseAbs()
                             .maxCoeff();
      if (dev > 1e-12)
        throw InvalidInstanceError(
            "\"terms\" and \"dense\" disagree (max deviation " +
            std::to_string(dev) + ")");
      return *std::move(from_terms);
    }
    return from_dense;
  }
  if (!from_terms)
    throw InvalidInstanceError("operator needs \"terms\" or \"dense\"");
  return *std::move(from_terms);
}

CompatibilityInstance parse_instance(const Json& j) {
  check_schema(j);
  const int n = require_n_qubits(j, -1);

  if (j.contains("povm")) {
    if (j.at("povm") != "sic")
      throw InvalidInstanceError("only \"povm\": \"sic\" is supported");
    return sic_instance(n, parse_real_vector(require(j, "probabilities"),
                                             "probabilities"));
  }

  const Json& obs = require(j, "observables");
  if (!obs.is_array() || obs.empty())
    throw InvalidInstanceError("\"observables\" must be a non-empty array");
  std::vector<ObservableOperator> observables;
  for (const auto& o : obs) observables.push_back(parse_operator(o, n));
  RealVector targets = parse_real_vector(require(j, "targets"), "targets");
  return CompatibilityInstance(n, std::move(observables), std::move(targets));
}

MarginalInstance parse_marginal(const Json& j) {
  check_schema(j);
  const int n = require_n_qubits(j, -1);
  const Json& parts = require(j, "parts");
  if (!parts.is_array() || parts.empty())
    throw InvalidInstanceError("\"parts\" must be a non-empty array");

  const double overlap_tol = j.value("overlap_tol", 1e-6);
  const double project_tol = j.value("psd_project_tol", 1e-6);

  std::vector<std::pair<std::vector<int>, Matrix>> raw;
  for (const auto& p : parts) {
    const Json& qubits = require(p, "qubits");
    if (!qubits.is_array() || qubits.empty())
      throw InvalidInstanceError("part \"qubits\" must be a non-empty array");
    std::vector<int> q;
    for (const auto& v : qubits) {
      if (!v.is_number_integer())
        throw InvalidInstanceError("part \"qubits\" must be integers");
      q.push_back(v.get<int>());
    }
    const Json& rho = require(p, "rho");
    raw.emplace_back(std::move(q), dense_from_json(
                                       rho.is_object() && rho.contains("dense")
                                           ? rho.at("dense")
                                           : rho));
  }
  return MarginalInstance::from_raw(n, raw, overlap_tol, project_tol);
}

std::optional<DensityMatrix> parse_reference(const Json& j) {
  if (!j.is_object() || !j.contains("reference")) return std::nullopt;
  const Json& ref = j.at("reference");
  const Matrix m = dense_from_json(
      ref.is_object() && ref.contains("dense") ? ref.at("dense") : ref);
  return project_to_state(m, 1e-6);
}

std::pair<ObservableOperator, ObservableOperator> parse_range_pair(
    const Json& j) {
  check_schema(j);
  const int n = require_n_qubits(j, -1);
  const Json& obs = require(j, "observables");
  if (!obs.is_array() || obs.size() != 2)
    throw InvalidInstanceError(
        "a numerical-range input needs exactly two observables");
  return {parse_operator(obs.at(0), n), parse_operator(obs.at(1), n)};
}

std::vector<PauliTerm> parse_qite_hamiltonian(const Json& j, int& n_qubits) {
  check_schema(j);
  n_qubits = require_n_qubits(j, -1);
  const Json& terms = require(j, "terms");
  if (!terms.is_array())
    throw InvalidInstanceError("\"terms\" must be an array");
  std::vector<PauliTerm> out;
  for (const auto& t : terms) {
    const Json& pauli = require(t, "pauli");
    const Json& weight = require(t, "weight");
    if (!pauli.is_string() || !weight.is_number())
      throw InvalidInstanceError(
          "each term needs a \"pauli\" string and a numeric \"weight\"");
    out.emplace_back(pauli.get<std::string>(), weight.get<double>());
    if (out.back().n_qubits() != n_qubits)
      throw InvalidInstanceError("Pauli string length mismatch in \"terms\"");
  }
  return out;
}

Json operator_to_json(const ObservableOperator& op) {
  Json out;
  out["n_qubits"] = op.n_qubits();
  if (op.terms()) {
    Json terms = Json::array();
    for (const auto& t : *op.terms())
      terms.push_back({{"pauli", t.letters}, {"weight", t.weight}});
    out["terms"] = std::move(terms);
  } else {
    out["dense"] = dense_to_json(op.dense());
  }
  return out;
}

std::string canonical_dump(const Json& j, int indent) {
  std::string out;
  dump_canonical(j, out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

}  // namespace maxent
