#pragma once

#include <cstddef>
#include <vector>

#include "ilap/graph.hpp"
#include "ilap/labels.hpp"
#include "ilap/point_cloud.hpp"

namespace ilap {

/// Three scattered labels plus a uniform grid over the unit square, labeled
/// by sin(x) cos(y). Nodes 0..2 are the labels; grid node (i, j) at
/// (i h, j h) with h = 1 / (grid - 1) follows as 3 + i * grid + j.
struct Toy2d {
  PointCloud cloud;
  WeightGraph graph;
  LabelAssignment labels;
  std::vector<double> truth;  // generating function at every node
};

struct Toy2dOptions {
  std::size_t grid = 101;
  double sigma = 0.02;
  std::size_t k = 10;
};

Toy2d make_toy2d(const Toy2dOptions& options = {});

}  // namespace ilap
