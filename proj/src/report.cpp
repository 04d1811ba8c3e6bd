#include "maxent/report.hpp"

namespace maxent {

namespace {

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

Json solver_report(const MaxEntState& state) {
  return Json{{"converged", state.converged},
              {"loss", state.loss},
              {"coefficients", to_json(state.coefficients)},
              {"achieved", to_json(state.achieved)},
              {"iterations", state.iterations},
              {"cap_saturated", state.cap_saturated}};
}

Json witness_report(const Witness& witness,
                    const WitnessVerification& check) {
  return Json{{"coefficients", to_json(witness.coefficients)},
              {"ground_energy", check.ground_energy},
              {"target_energy", check.target_energy},
              {"margin", check.margin},
              {"certified", check.certified},
              {"ground_space_dim", check.ground_space_dim},
              {"gap", check.gap}};
}

Json run_report(const PipelineResult& result, const std::string& input_digest,
                const ReportOptions& options) {
  Json out{{"schema", kSchemaName},
           {"command", options.command},
           {"digest", input_digest},
           {"seed", options.seed},
           {"verdict", to_string(result.verdict)},
           {"solver", solver_report(result.state)}};
  if (result.witness && result.verification)
    out["witness"] = witness_report(*result.witness, *result.verification);
  if (!result.note.empty()) out["note"] = result.note;
  if (options.with_timing) out["timing_ms"] = options.elapsed_ms;
  return out;
}

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::Compatible:
      return 0;
    case Verdict::IncompatibleCertified:
      return 2;
    case Verdict::Inconclusive:
      return 3;
  }
  return 3;
}

}  // namespace maxent
