#include "maxent/numerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxent/errors.hpp"

namespace maxent {

namespace {

using Point = std::array<double, 2>;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double abx = b[0] - a[0], aby = b[1] - a[1];
  const double len2 = abx * abx + aby * aby;
  double t = 0.0;
  if (len2 > 0)
    t = std::clamp(((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / len2, 0.0, 1.0);
  const double dx = p[0] - (a[0] + t * abx), dy = p[1] - (a[1] + t * aby);
  return std::hypot(dx, dy);
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::vector<BoundarySample> trace_boundary(const Matrix& a1, const Matrix& a2,
                                           int samples, double gap_tol) {
  if (samples < 8)
    throw InvalidInstanceError("trace_boundary needs at least 8 samples");
  if (a1.rows() != a2.rows())
    throw InvalidInstanceError("trace_boundary: operator dimension mismatch");
  if (!is_hermitian(a1) || !is_hermitian(a2))
    throw InvalidInstanceError("trace_boundary: operators must be Hermitian");

  std::vector<BoundarySample> out;
  out.reserve(static_cast<size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    const Matrix h = std::cos(theta) * a1 + std::sin(theta) * a2;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector& vals = es.eigenvalues();
    const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    const double thresh = vals(0) + gap_tol * scale;

    BoundarySample sample;
    sample.theta = theta;
    sample.energies = {vals(0), vals(1)};
    Index ground_dim = 0;
    while (ground_dim < vals.size() && vals(ground_dim) <= thresh)
      ++ground_dim;
    sample.degenerate = ground_dim > 1;

    auto point_of = [&](const Vector& v) -> Point {
      return {(v.adjoint() * a1 * v)(0).real(),
              (v.adjoint() * a2 * v)(0).real()};
    };

    if (ground_dim == 1) {
      sample.points.push_back(point_of(es.eigenvectors().col(0)));
    } else {
      // Rediagonalize the tangential observable inside the ground space so
      // the endpoints of the flat face appear among the reported points.
      const Matrix basis = es.eigenvectors().leftCols(ground_dim);
      const Matrix tangential =
          -std::sin(theta) * a1 + std::cos(theta) * a2;
      Eigen::SelfAdjointEigenSolver<Matrix> face(basis.adjoint() * tangential *
                                                 basis);
      for (Index k = 0; k < ground_dim; ++k) {
        const Vector v = basis * face.eigenvectors().col(k);
        sample.points.push_back(point_of(v));
      }
    }
    out.push_back(std::move(sample));
  }
  return out;
}

Membership membership(const std::vector<BoundarySample>& boundary,
                      std::array<double, 2> point, double tol) {
  std::vector<Point> pts;
  for (const auto& s : boundary)
    for (const auto& p : s.points) pts.push_back(p);
  if (pts.empty())
    throw InvalidInstanceError("membership: empty boundary trace");

  const std::vector<Point> hull = convex_hull(std::move(pts));

  if (hull.size() == 1) {
    const double d = std::hypot(point[0] - hull[0][0], point[1] - hull[0][1]);
    return d <= tol ? Membership::Boundary : Membership::Outside;
  }
  if (hull.size() == 2) {
    // Collinear range: a segment has no interior in the plane.
    const double d = segment_distance(point, hull[0], hull[1]);
    return d <= tol ? Membership::Boundary : Membership::Outside;
  }

  bool inside = true;
  double dist = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, point) < 0) inside = false;
    dist = std::min(dist, segment_distance(point, a, b));
  }
  if (dist <= tol) return Membership::Boundary;
  return inside ? Membership::Inside : Membership::Outside;
}

Membership membership(const Matrix& a1, const Matrix& a2,
                      std::array<double, 2> point, int samples, double tol) {
  if (samples < 256)
    throw InvalidInstanceError("membership needs a boundary of >= 256 samples");
  return membership(trace_boundary(a1, a2, samples), point, tol);
}

}  // namespace maxent
