#include "ilap/point_cloud.hpp"

#include <cmath>
#include <limits>

#include "ilap/error.hpp"

namespace ilap {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  require(dim_ > 0, "point cloud dimension must be positive");
  require(coords_.size() % dim_ == 0, "coordinate count is not a multiple of the dimension");
  for (double v : coords_) require(std::isfinite(v), "point cloud coordinates must be finite");
}

void PointCloud::push_back(std::span<const double> p) {
  if (dim_ == 0) dim_ = p.size();
  require(p.size() == dim_, "point dimension mismatch");
  for (double v : p) require(std::isfinite(v), "point cloud coordinates must be finite");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return squared_distance_bounded(a, b, std::numeric_limits<double>::infinity());
}

// Four interleaved accumulators; the remainder lands in lanes 0..2.
double squared_distance_bounded(std::span<const double> a, std::span<const double> b,
                                double bound) noexcept {
  const std::size_t d = a.size();
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t k = 0;
  while (k + 4 <= d) {
    const double t0 = a[k] - b[k], t1 = a[k + 1] - b[k + 1];
    const double t2 = a[k + 2] - b[k + 2], t3 = a[k + 3] - b[k + 3];
    s0 += t0 * t0;
    s1 += t1 * t1;
    s2 += t2 * t2;
    s3 += t3 * t3;
    k += 4;
    if ((k & 15) == 0 && (s0 + s1) + (s2 + s3) > bound) return (s0 + s1) + (s2 + s3);
  }
  if (k < d) { const double t = a[k] - b[k]; s0 += t * t; ++k; }
  if (k < d) { const double t = a[k] - b[k]; s1 += t * t; ++k; }
  if (k < d) { const double t = a[k] - b[k]; s2 += t * t; }
  return (s0 + s1) + (s2 + s3);
}

}  // namespace ilap
