#pragma once

#include <optional>
#include <string>

#include "maxent/witness.hpp"

namespace maxent {

enum class Verdict { Compatible, IncompatibleCertified, Inconclusive };

std::string to_string(Verdict v);

/// Full solve-then-certify run: fit, and on non-convergence route through
/// the rank profile to the matching witness construction and verification.
struct PipelineResult {
  Verdict verdict = Verdict::Inconclusive;
  MaxEntState state;
  std::optional<RankProfile> profile;
  std::optional<Witness> witness;
  std::optional<WitnessVerification> verification;
  std::string note;  // set when the witness path was inconclusive
};

PipelineResult run_pipeline(const CompatibilityInstance& instance,
                            const SolverConfig& config = {},
                            double eta = 1e-3);

}  // namespace maxent
