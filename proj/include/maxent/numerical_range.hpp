#pragma once

#include <array>
#include <vector>

#include "maxent/operator_algebra.hpp"

namespace maxent {

/// One θ sample of the boundary sweep of W(A₁,A₂). Ground vectors of
/// H(θ) = cosθ·A₁ + sinθ·A₂ each contribute one (⟨A₁⟩,⟨A₂⟩) point; at
/// degenerate θ the ground space is rediagonalized along the tangential
/// direction so the face endpoints appear among the points.
struct BoundarySample {
  double theta = 0.0;
  std::array<double, 2> energies{};  // lowest two eigenvalues of H(θ)
  std::vector<std::array<double, 2>> points;
  bool degenerate = false;
};

/// K uniform samples of θ on [0,2π). gap_tol is relative: the ground space
/// collects eigenvalues within gap_tol·max(1,‖H‖) of λ_min.
std::vector<BoundarySample> trace_boundary(const Matrix& a1, const Matrix& a2,
                                           int samples = 720,
                                           double gap_tol = 1e-8);

enum class Membership { Inside, Outside, Boundary };

/// Point-in-convex-polygon test against the traced boundary, with a
/// tolerance band (in observable units) classified as Boundary. Collinear
/// boundaries reduce to a 1-D interval test.
Membership membership(const std::vector<BoundarySample>& boundary,
                      std::array<double, 2> point, double tol = 1e-3);

/// Convenience overload: traces the boundary first (samples ≥ 256).
Membership membership(const Matrix& a1, const Matrix& a2,
                      std::array<double, 2> point, int samples = 720,
                      double tol = 1e-3);

}  // namespace maxent
