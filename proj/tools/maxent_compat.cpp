#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "maxent/errors.hpp"
#include "maxent/numerical_range.hpp"
#include "maxent/povm.hpp"
#include "maxent/report.hpp"

namespace fs = std::filesystem;
using namespace maxent;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  double epsilon = 1e-8;
  int max_iters = 2000;
  int restarts = 5;
  std::string objective = "squared";
  std::string output;
  int jobs = 1;
  bool no_timestamp = false;
};

SolverConfig solver_config(const GlobalOptions& opts) {
  SolverConfig config;
  config.seed = opts.seed;
  config.epsilon = opts.epsilon;
  config.max_iters = opts.max_iters;
  config.restarts = opts.restarts;
  if (opts.objective == "squared") {
    config.objective = Objective::Squared;
  } else if (opts.objective == "cross-entropy") {
    config.objective = Objective::CrossEntropy;
  } else {
    throw InvalidInstanceError("unknown objective \"" + opts.objective +
                               "\" (use squared or cross-entropy)");
  }
  return config;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void emit(const Json& report, const std::string& output) {
  const std::string text = canonical_dump(report, 2);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw InvalidInstanceError("cannot write \"" + output + "\"");
    out << text;
  }
}

struct RunOutcome {
  Json report;
  int code = 0;
};

RunOutcome run_solve_one(const std::string& path, const GlobalOptions& opts,
                         const std::string& command) {
  const auto start = std::chrono::steady_clock::now();
  const Json input = load_json_file(path);
  const std::string digest = fnv1a_hex(canonical_dump(input));
  const CompatibilityInstance instance = parse_instance(input);

  const PipelineResult result = run_pipeline(instance, solver_config(opts));
  ReportOptions ropts{command, opts.seed, !opts.no_timestamp,
                      elapsed_ms(start)};
  Json report = run_report(result, digest, ropts);
  const std::vector<int> box = instance.spectral_box_violations();
  if (!box.empty()) report["spectral_box_violations"] = box;
  if (auto reference = parse_reference(input))
    report["fidelity"] = fidelity(result.state.rho.matrix(),
                                  reference->matrix());
  return {std::move(report), exit_code(result.verdict)};
}

RunOutcome run_marginal_one(const std::string& path,
                            const GlobalOptions& opts,
                            const std::string& command) {
  const auto start = std::chrono::steady_clock::now();
  const Json input = load_json_file(path);
  const std::string digest = fnv1a_hex(canonical_dump(input));
  const MarginalInstance minstance = parse_marginal(input);

  std::optional<MarginalReduction> reduction;
  try {
    reduction.emplace(to_compatibility(minstance));
  } catch (const OverlapMismatchError& e) {
    // Inconsistent overlaps certify incompatibility with no optimization.
    Json report{{"schema", kSchemaName},
                {"command", command},
                {"digest", digest},
                {"seed", opts.seed},
                {"verdict", to_string(Verdict::IncompatibleCertified)},
                {"overlap_mismatch",
                 Json{{"part_a", e.part_a},
                      {"part_b", e.part_b},
                      {"trace_distance", e.distance},
                      {"detail", e.what()}}}};
    if (!opts.no_timestamp) report["timing_ms"] = elapsed_ms(start);
    return {std::move(report), exit_code(Verdict::IncompatibleCertified)};
  }

  const PipelineResult result =
      run_pipeline(reduction->instance, solver_config(opts));
  ReportOptions ropts{command, opts.seed, !opts.no_timestamp,
                      elapsed_ms(start)};
  Json report = run_report(result, digest, ropts);

  if (result.witness) {
    const LocalizedWitness localized =
        localize_witness(*result.witness, minstance, *reduction);
    Json parts = Json::array();
    for (size_t j = 0; j < minstance.parts().size(); ++j)
      parts.push_back({{"qubits", minstance.parts()[j].qubits},
                       {"energy", localized.part_energies[j]}});
    report["localized_witness"] = Json{{"parts", std::move(parts)},
                                       {"total_energy", localized.total_energy},
                                       {"ground_energy", localized.ground_energy},
                                       {"margin", localized.margin}};
  }
  if (auto reference = parse_reference(input))
    report["fidelity"] = fidelity(result.state.rho.matrix(),
                                  reference->matrix());
  return {std::move(report), exit_code(result.verdict)};
}

int run_batch(const std::string& directory, const GlobalOptions& opts,
              const std::string& command,
              RunOutcome (*runner)(const std::string&, const GlobalOptions&,
                                   const std::string&)) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw InvalidInstanceError("no .json instances in \"" + directory + "\"");

  const int jobs = std::max(1, opts.jobs);
  std::vector<RunOutcome> outcomes(files.size());
  for (size_t base = 0; base < files.size(); base +=
                                             static_cast<size_t>(jobs)) {
    std::vector<std::future<RunOutcome>> wave;
    const size_t end = std::min(files.size(), base + static_cast<size_t>(jobs));
    for (size_t i = base; i < end; ++i)
      wave.push_back(std::async(std::launch::async, runner, files[i], opts,
                                command));
    for (size_t i = base; i < end; ++i)
      outcomes[i] = wave[i - base].get();
  }

  Json summary = Json::array();
  int worst = 0;
  for (size_t i = 0; i < files.size(); ++i) {
    if (!opts.output.empty()) {
      fs::create_directories(opts.output);
      const std::string name =
          fs::path(files[i]).stem().string() + ".report.json";
      std::ofstream out(fs::path(opts.output) / name);
      out << canonical_dump(outcomes[i].report, 2);
    }
    summary.push_back({{"file", files[i]},
                       {"verdict", outcomes[i].report.value("verdict", "")},
                       {"exit", outcomes[i].code}});
    worst = std::max(worst, outcomes[i].code);
  }
  std::cout << canonical_dump(summary, 2);
  return worst;
}

int run_report_command(const std::string& path, const GlobalOptions& opts,
                       const std::string& command,
                       RunOutcome (*runner)(const std::string&,
                                            const GlobalOptions&,
                                            const std::string&)) {
  if (fs::is_directory(path)) return run_batch(path, opts, command, runner);
  RunOutcome outcome = runner(path, opts, command);
  emit(outcome.report, opts.output);
  return outcome.code;
}

int run_range(const std::string& path, const GlobalOptions& opts, int samples,
              double gap_tol) {
  const Json input = load_json_file(path);
  const auto [a1, a2] = parse_range_pair(input);
  const auto boundary = trace_boundary(a1.dense(), a2.dense(), samples,
                                       gap_tol);
  std::ostringstream csv;
  csv << "theta,ax1,ax2,degenerate,energy0,energy1\n";
  char buf[256];
  for (const auto& sample : boundary)
    for (const auto& p : sample.points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%.17g,%.17g\n",
                    sample.theta, p[0], p[1], sample.degenerate ? 1 : 0,
                    sample.energies[0], sample.energies[1]);
      csv << buf;
    }
  if (opts.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(opts.output);
    if (!out)
      throw InvalidInstanceError("cannot write \"" + opts.output + "\"");
    out << csv.str();
  }
  return 0;
}

int run_qite(const std::string& path, const GlobalOptions& opts,
             const std::string& command, double beta, double dtau, int support,
             bool verify) {
  const auto start = std::chrono::steady_clock::now();
  const Json input = load_json_file(path);
  const std::string digest = fnv1a_hex(canonical_dump(input));
  int n = 0;
  const std::vector<PauliTerm> terms = parse_qite_hamiltonian(input, n);

  QiteConfig config;
  config.beta = beta;
  config.dtau = dtau;
  config.unitary_support = support;
  const QiteRun run = prepare_thermal(terms, config);

  Json norms = Json::array();
  for (const auto& row : run.expansions) {
    Json step = Json::array();
    for (const auto& expansion : row) step.push_back(expansion.norm());
    norms.push_back(std::move(step));
  }
  Json report{{"schema", kSchemaName},
              {"command", command},
              {"digest", digest},
              {"n_qubits", n},
              {"beta", beta},
              {"dtau", dtau},
              {"steps", config.steps()},
              {"unitary_support", support},
              {"support_truncated", run.support_truncated},
              {"step_expansion_norms", std::move(norms)},
              {"rho", dense_to_json(run.rho.matrix())}};
  if (verify) {
    Matrix h = Matrix::Zero(run.rho.dim(), run.rho.dim());
    for (const auto& t : terms) h += pauli_to_dense(t);
    const DensityMatrix exact = gibbs_state((beta * h).eval());
    report["trace_distance"] =
        trace_distance(run.rho.matrix(), exact.matrix());
  }
  if (!opts.no_timestamp) report["timing_ms"] = elapsed_ms(start);
  emit(report, opts.output);
  return 0;
}

int run_povm_check(int n, const GlobalOptions& opts,
                   const std::string& command) {
  const PovmSet povm = sic_povm(n);  // constructor re-validates everything
  const Index dim = Index{1} << n;
  Matrix sum = Matrix::Zero(dim, dim);
  double min_eig = 0.0;
  for (const auto& e : povm.elements()) {
    sum += e.dense();
    Eigen::SelfAdjointEigenSolver<Matrix> es(e.dense(),
                                             Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  Json report{{"schema", kSchemaName},
              {"command", command},
              {"povm", "sic"},
              {"n_qubits", n},
              {"elements", povm.size()},
              {"identity_deviation",
               (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff()},
              {"min_eigenvalue", min_eig},
              {"informationally_complete", true}};
  emit(report, opts.output);
  return 0;
}

std::string echo_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy quantum state compatibility toolkit"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "RNG seed (echoed in reports)");
  app.add_option("--epsilon", opts.epsilon, "loss acceptance threshold");
  app.add_option("--max-iters", opts.max_iters, "iteration cap per restart");
  app.add_option("--restarts", opts.restarts, "random restarts");
  app.add_option("--objective", opts.objective,
                 "squared or cross-entropy");
  app.add_option("--output", opts.output, "write the report/CSV here");
  app.add_option("--jobs", opts.jobs, "parallel runs for batch directories");
  app.add_flag("--no-timestamp", opts.no_timestamp,
               "omit timing from reports (stable bytes)");

  std::string input;
  auto* solve_cmd =
      app.add_subcommand("solve", "decide a compatibility instance");
  solve_cmd->add_option("instance", input, "instance JSON file or directory")
      ->required();
  solve_cmd->fallthrough();

  auto* marginal_cmd =
      app.add_subcommand("marginal", "decide a quantum marginal problem");
  marginal_cmd->add_option("instance", input, "marginal JSON file or directory")
      ->required();
  marginal_cmd->fallthrough();

  int samples = 720;
  double gap_tol = 1e-8;
  auto* range_cmd = app.add_subcommand(
      "range", "trace the joint numerical range boundary of two observables");
  range_cmd->add_option("operators", input, "two-operator JSON file")
      ->required();
  range_cmd->add_option("--samples", samples, "number of theta samples");
  range_cmd->add_option("--gap-tol", gap_tol, "relative degeneracy threshold");
  range_cmd->fallthrough();

  double beta = 1.0, dtau = 0.05;
  int support = 4;
  bool verify = false;
  auto* qite_cmd = app.add_subcommand(
      "qite", "simulate QITE thermal-state preparation classically");
  qite_cmd->add_option("hamiltonian", input, "Hamiltonian JSON file")
      ->required();
  qite_cmd->add_option("--beta", beta, "inverse temperature");
  qite_cmd->add_option("--dtau", dtau, "Trotter step");
  qite_cmd->add_option("--d", support, "unitary support size");
  qite_cmd->add_flag("--verify", verify,
                     "report trace distance to the exact Gibbs state");
  qite_cmd->fallthrough();

  int povm_n = 1;
  auto* povm_cmd =
      app.add_subcommand("povm-check", "validate the SIC-POVM construction");
  povm_cmd->add_option("--n", povm_n, "qubit count")->required();
  povm_cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const std::string command = echo_command(argc, argv);
  try {
    if (solve_cmd->parsed())
      return run_report_command(input, opts, command, run_solve_one);
    if (marginal_cmd->parsed())
      return run_report_command(input, opts, command, run_marginal_one);
    if (range_cmd->parsed()) return run_range(input, opts, samples, gap_tol);
    if (qite_cmd->parsed())
      return run_qite(input, opts, command, beta, dtau, support, verify);
    if (povm_cmd->parsed()) return run_povm_check(povm_n, opts, command);
  } catch (const InvalidInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
