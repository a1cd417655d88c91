#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "ilap/kernel.hpp"
#include "ilap/point_cloud.hpp"

namespace ilap {

using Index = std::int32_t;

struct Edge {
  Index from;
  Index to;
  double weight;
};

/// Directed nonnegative weight matrix in compressed-row form. Row i holds the
/// out-edges w_ij; the diagonal is never stored. Immutable once built.
class WeightGraph {
 public:
  WeightGraph() = default;

  /// Builds from an edge list. Duplicate (i, j) entries are summed, self
  /// loops dropped, and columns sorted within a row.
  static WeightGraph from_edges(std::size_t n, std::span<const Edge> edges);
  static WeightGraph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t size() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nnz() const noexcept { return cols_.size(); }

  std::size_t row_begin(std::size_t i) const { return row_ptr_[i]; }
  std::size_t row_end(std::size_t i) const { return row_ptr_[i + 1]; }
  std::span<const Index> neighbors(std::size_t i) const {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> weights(std::size_t i) const {
    return {vals_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<Index>& cols() const noexcept { return cols_; }
  const std::vector<double>& values() const noexcept { return vals_; }

  /// Stored weight, 0 when (i, j) is not in the pattern.
  double weight(std::size_t i, std::size_t j) const;

  std::vector<Edge> edges() const;

  /// w'_ij = max(w_ij, w_ji) over the union of both patterns.
  WeightGraph symmetrized() const;

  bool operator==(const WeightGraph&) const = default;

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<Index> cols_;
  std::vector<double> vals_;
};

struct Neighbor {
  Index index;
  double sq_dist;
};

/// Exact k nearest neighbors of every point (self excluded), nearest first;
/// ties in distance are broken by the smaller index.
std::vector<std::vector<Neighbor>> knn_brute_force(const PointCloud& cloud, std::size_t k);
std::vector<std::vector<Neighbor>> knn_kdtree(const PointCloud& cloud, std::size_t k);

/// Dispatches to the kd-tree for low dimension, brute force otherwise.
std::vector<std::vector<Neighbor>> knn_exact(const PointCloud& cloud, std::size_t k);

struct GraphOptions {
  bool symmetrize = false;
  /// Self-tuning rows with sigma = 0 take the sigma -> 0 limit (weight 1 to
  /// coincident neighbors, 0 otherwise) instead of throwing.
  bool coincident_limit = false;
};

/// Weights eta(|x_i - x_j|) to the k nearest neighbors of each point.
/// A QuarticSelfTuning kernel is routed to self_tuning_weights.
WeightGraph knn_graph(const PointCloud& cloud, std::size_t k, const KernelSpec& kernel,
                      GraphOptions options = {});

/// w_ij = (exp(-|x_i - x_j|^4 / sigma_i^4))^2 with sigma_i the distance from
/// x_i to its k_sigma-th nearest neighbor.
WeightGraph self_tuning_weights(const PointCloud& cloud, std::size_t k, std::size_t k_sigma,
                                GraphOptions options = {});

/// Same, from precomputed neighbor lists (each of length >= k).
WeightGraph self_tuning_weights(const std::vector<std::vector<Neighbor>>& knn, std::size_t k,
                                std::size_t k_sigma, GraphOptions options = {});

/// Every pair closer than `radius` with a positive weight_of_distance(|x_i - x_j|).
WeightGraph radius_graph(const PointCloud& cloud, double radius,
                         const std::function<double(double)>& weight_of_distance);

}  // namespace ilap
