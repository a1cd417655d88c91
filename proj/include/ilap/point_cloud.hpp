#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ilap {

/// n points in R^d stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> point(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

  const std::vector<double>& coords() const noexcept { return coords_; }

  void push_back(std::span<const double> p);

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Same accumulation as squared_distance, but may return early with a partial
/// sum once it exceeds `bound`. Any returned value <= bound is exact.
double squared_distance_bounded(std::span<const double> a, std::span<const double> b,
                                double bound) noexcept;

}  // namespace ilap
