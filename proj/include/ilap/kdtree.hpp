#pragma once

#include <cstddef>
#include <vector>

#include "ilap/graph.hpp"
#include "ilap/point_cloud.hpp"

namespace ilap {

/// Static kd-tree over a point cloud for exact kNN queries. Holds a
/// reference to the cloud, which must outlive the tree.
class KdTree {
 public:
  explicit KdTree(const PointCloud& cloud, std::size_t leaf_size = 8);

  /// k nearest points to point `query` of the cloud, self excluded, ordered
  /// by (distance, index).
  std::vector<Neighbor> nearest(std::size_t query, std::size_t k) const;

 private:
  struct Node {
    std::size_t begin, end;  // range in order_
    int axis;                // -1 for leaves
    double split;
    std::size_t left, right;
  };

  std::size_t build(std::size_t begin, std::size_t end, std::size_t depth);

  const PointCloud& cloud_;
  std::size_t leaf_size_;
  std::vector<Index> order_;
  std::vector<Node> nodes_;
};

}  // namespace ilap
