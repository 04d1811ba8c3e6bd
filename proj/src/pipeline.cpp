#include "maxent/pipeline.hpp"

#include "maxent/errors.hpp"

namespace maxent {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Compatible:
      return "compatible";
    case Verdict::IncompatibleCertified:
      return "incompatible-certified";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

PipelineResult run_pipeline(const CompatibilityInstance& instance,
                            const SolverConfig& config, double eta) {
  PipelineResult out{.verdict = Verdict::Inconclusive,
                     .state = solve(instance, config)};
  if (out.state.converged) {
    out.verdict = Verdict::Compatible;
    return out;
  }

  out.profile = rank_profile(out.state, eta);
  try {
    out.witness = out.profile->numerical_rank == 1
                      ? witness_from_boundary(instance, out.state)
                      : witness_degenerate(instance, out.state, config, eta);
  } catch (const InconclusiveWitnessError& e) {
    out.verdict = Verdict::Inconclusive;
    out.note = e.what();
    return out;
  }

  out.verification = verify_witness(instance, *out.witness);
  out.verdict = out.verification->certified ? Verdict::IncompatibleCertified
                                            : Verdict::Inconclusive;
  if (!out.verification->certified)
    out.note = "witness margin is not positive under re-verification";
  return out;
}

}  // namespace maxent
