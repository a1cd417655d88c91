#include "ilap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "ilap/error.hpp"
#include "ilap/kdtree.hpp"
#include "ilap/parallel.hpp"

namespace ilap {

namespace {

bool closer(const Neighbor& a, const Neighbor& b) {
  return a.sq_dist < b.sq_dist || (a.sq_dist == b.sq_dist && a.index < b.index);
}

void check_k(const PointCloud& cloud, std::size_t k) {
  require(cloud.size() >= 1, "point cloud is empty");
  require(k >= 1, "k must be positive");
  require(k < cloud.size(), "k = " + std::to_string(k) + " must be smaller than the point count " +
                                std::to_string(cloud.size()));
}

std::vector<Edge> edges_from_knn(const std::vector<std::vector<Neighbor>>& knn,
                                 const auto& weight_of) {
  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& row : knn) total += row.size();
  edges.reserve(total);
  for (std::size_t i = 0; i < knn.size(); ++i)
    for (const auto& nb : knn[i])
      edges.push_back({static_cast<Index>(i), nb.index, weight_of(i, nb)});
  return edges;
}

}  // namespace

WeightGraph WeightGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (const auto& e : edges) {
    require(e.from >= 0 && static_cast<std::size_t>(e.from) < n && e.to >= 0 &&
                static_cast<std::size_t>(e.to) < n,
            "edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                ") out of range for " + std::to_string(n) + " nodes");
    require(std::isfinite(e.weight) && e.weight >= 0.0, "edge weights must be finite and nonnegative");
    if (e.from != e.to) sorted.push_back(e);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });

  WeightGraph g;
  g.row_ptr_.assign(n + 1, 0);
  g.cols_.reserve(sorted.size());
  g.vals_.reserve(sorted.size());
  for (std::size_t e = 0; e < sorted.size(); ++e) {
    if (e > 0 && sorted[e].from == sorted[e - 1].from && sorted[e].to == sorted[e - 1].to) {
      g.vals_.back() += sorted[e].weight;
      continue;
    }
    g.cols_.push_back(sorted[e].to);
    g.vals_.push_back(sorted[e].weight);
    ++g.row_ptr_[sorted[e].from + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.row_ptr_[i + 1] += g.row_ptr_[i];
  return g;
}

double WeightGraph::weight(std::size_t i, std::size_t j) const {
  auto cols = neighbors(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<Index>(j));
  if (it == cols.end() || *it != static_cast<Index>(j)) return 0.0;
  return vals_[row_ptr_[i] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<Edge> WeightGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e)
      out.push_back({static_cast<Index>(i), cols_[e], vals_[e]});
  return out;
}

WeightGraph WeightGraph::symmetrized() const {
  std::vector<Edge> both = edges();
  const std::size_t m = both.size();
  both.reserve(2 * m);
  for (std::size_t e = 0; e < m; ++e) both.push_back({both[e].to, both[e].from, both[e].weight});
  std::sort(both.begin(), both.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  std::vector<Edge> merged;
  merged.reserve(both.size());
  for (const auto& e : both) {
    if (!merged.empty() && merged.back().from == e.from && merged.back().to == e.to)
      merged.back().weight = std::max(merged.back().weight, e.weight);
    else
      merged.push_back(e);
  }
  return from_edges(size(), merged);
}

std::vector<std::vector<Neighbor>> knn_brute_force(const PointCloud& cloud, std::size_t k) {
  check_k(cloud, k);
  const std::size_t n = cloud.size();
  std::vector<std::vector<Neighbor>> out(n);
  parallel_for(n, [&](std::size_t i) {
    // Max-heap on (distance, index): top is the current worst kept neighbor.
    std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(&closer)> heap(closer);
    const auto xi = cloud.point(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double bound =
          heap.size() < k ? std::numeric_limits<double>::infinity() : heap.top().sq_dist;
      const double d2 = squared_distance_bounded(xi, cloud.point(j), bound);
      const Neighbor cand{static_cast<Index>(j), d2};
      if (heap.size() < k) {
        heap.push(cand);
      } else if (closer(cand, heap.top())) {
        heap.pop();
        heap.push(cand);
      }
    }
    auto& row = out[i];
    row.resize(heap.size());
    for (std::size_t r = row.size(); r-- > 0;) {
      row[r] = heap.top();
      heap.pop();
    }
  });
  return out;
}

std::vector<std::vector<Neighbor>> knn_kdtree(const PointCloud& cloud, std::size_t k) {
  check_k(cloud, k);
  const KdTree tree(cloud);
  std::vector<std::vector<Neighbor>> out(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) { out[i] = tree.nearest(i, k); });
  return out;
}

std::vector<std::vector<Neighbor>> knn_exact(const PointCloud& cloud, std::size_t k) {
  return cloud.dim() <= 8 ? knn_kdtree(cloud, k) : knn_brute_force(cloud, k);
}

WeightGraph knn_graph(const PointCloud& cloud, std::size_t k, const KernelSpec& kernel,
                      GraphOptions options) {
  kernel.validate();
  if (kernel.family == KernelFamily::QuarticSelfTuning)
    return self_tuning_weights(cloud, k, static_cast<std::size_t>(kernel.k_sigma), options);
  const auto knn = knn_exact(cloud, k);
  const auto edges = edges_from_knn(
      knn, [&](std::size_t, const Neighbor& nb) { return kernel(std::sqrt(nb.sq_dist)); });
  auto g = WeightGraph::from_edges(cloud.size(), edges);
  return options.symmetrize ? g.symmetrized() : g;
}

WeightGraph self_tuning_weights(const PointCloud& cloud, std::size_t k, std::size_t k_sigma,
                                GraphOptions options) {
  require(k_sigma >= 1 && k_sigma <= k, "self-tuning weights need 1 <= k_sigma <= k");
  check_k(cloud, k);
  return self_tuning_weights(knn_exact(cloud, k), k, k_sigma, options);
}

WeightGraph self_tuning_weights(const std::vector<std::vector<Neighbor>>& knn, std::size_t k,
                                std::size_t k_sigma, GraphOptions options) {
  require(k_sigma >= 1 && k_sigma <= k, "self-tuning weights need 1 <= k_sigma <= k");
  std::vector<double> sigma2(knn.size());
  for (std::size_t i = 0; i < knn.size(); ++i) {
    require(knn[i].size() >= k, "neighbor list shorter than k");
    sigma2[i] = knn[i][k_sigma - 1].sq_dist;
    if (!(sigma2[i] > 0.0) && !options.coincident_limit)
      fail(ErrorKind::DegenerateBandwidth,
           "row " + std::to_string(i) + " has zero bandwidth: at least " +
               std::to_string(k_sigma) + " neighbors coincide with it");
  }
  std::vector<Edge> edges;
  edges.reserve(knn.size() * k);
  for (std::size_t i = 0; i < knn.size(); ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      if (!(sigma2[i] > 0.0)) {
        if (knn[i][r].sq_dist == 0.0) edges.push_back({static_cast<Index>(i), knn[i][r].index, 1.0});
        continue;
      }
      const double ratio2 = knn[i][r].sq_dist / sigma2[i];
      const double e = std::exp(-ratio2 * ratio2);
      edges.push_back({static_cast<Index>(i), knn[i][r].index, e * e});
    }
  }
  auto g = WeightGraph::from_edges(knn.size(), edges);
  return options.symmetrize ? g.symmetrized() : g;
}

WeightGraph radius_graph(const PointCloud& cloud, double radius,
                         const std::function<double(double)>& weight_of_distance) {
  require(radius > 0.0, "radius must be positive");
  const std::size_t n = cloud.size();
  const double r2 = radius * radius;
  std::vector<std::vector<Edge>> rows(n);
  parallel_for(n, [&](std::size_t i) {
    const auto xi = cloud.point(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = squared_distance(xi, cloud.point(j));
      if (d2 >= r2) continue;
      const double w = weight_of_distance(std::sqrt(d2));
      if (w > 0.0) rows[i].push_back({static_cast<Index>(i), static_cast<Index>(j), w});
    }
  });
  std::vector<Edge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  return WeightGraph::from_edges(n, edges);
}

}  // namespace ilap
