#pragma once

#include "maxent/io.hpp"
#include "maxent/pipeline.hpp"

namespace maxent {

Json solver_report(const MaxEntState& state);
Json witness_report(const Witness& witness, const WitnessVerification& check);

struct ReportOptions {
  std::string command;
  std::uint64_t seed = 0;
  bool with_timing = true;
  double elapsed_ms = 0.0;
};

/// The run report for a compatibility or marginal run. `input_digest` is the
/// FNV-1a of the canonicalized input file.
Json run_report(const PipelineResult& result, const std::string& input_digest,
                const ReportOptions& options);

int exit_code(Verdict verdict);

}  // namespace maxent
