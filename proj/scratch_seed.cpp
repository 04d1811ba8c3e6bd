#include <cstdio>
#include "maxent/errors.hpp"
#include "maxent/pipeline.hpp"
#include "../tests/support.hpp"

using namespace maxent;
using namespace maxent::testing;

int main() {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto rng = rng_for(seed);
    Matrix local1 = random_hermitian(rng, 4);
    Matrix local2 = random_hermitian(rng, 4);
    local1 /= Eigen::SelfAdjointEigenSolver<Matrix>(local1, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    local2 /= Eigen::SelfAdjointEigenSolver<Matrix>(local2, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    std::vector<ObservableOperator> obs;
    obs.emplace_back(embed_local(local1, {1, 2}, 3));
    obs.emplace_back(embed_local(local2, {2, 3}, 3));
    RealVector targets(2);
    targets << 0.0, 1.5;
    const CompatibilityInstance inst(3, obs, targets);

    const PipelineResult r = run_pipeline(inst);
    const int rank = r.profile ? r.profile->numerical_rank : -1;
    double wx = 0, wy = 0, margin = 0;
    if (r.witness && r.verification) {
      const auto& w = r.witness->coefficients;
      wx = w(0) / w.norm();
      wy = w(1) / w.norm();
      margin = r.verification->margin;
    }
    std::printf("seed %2llu: verdict=%-22s rank=%d dir=(%+.5f,%+.5f) margin=%8.3f %s\n",
                (unsigned long long)seed, to_string(r.verdict).c_str(), rank,
                wx, wy, margin, r.note.c_str());
  }
  return 0;
}
