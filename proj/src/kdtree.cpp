#include "ilap/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace ilap {

namespace {

bool closer(const Neighbor& a, const Neighbor& b) {
  return a.sq_dist < b.sq_dist || (a.sq_dist == b.sq_dist && a.index < b.index);
}

using Heap = std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(&closer)>;

}  // namespace

KdTree::KdTree(const PointCloud& cloud, std::size_t leaf_size)
    : cloud_(cloud), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  order_.resize(cloud.size());
  std::iota(order_.begin(), order_.end(), Index{0});
  if (!order_.empty()) build(0, order_.size(), 0);
}

std::size_t KdTree::build(std::size_t begin, std::size_t end, std::size_t depth) {
  const std::size_t id = nodes_.size();
  nodes_.push_back({begin, end, -1, 0.0, 0, 0});
  if (end - begin <= leaf_size_) return id;

  const std::size_t dim = cloud_.dim();
  int axis = 0;
  double best_spread = -1.0;
  for (std::size_t a = 0; a < dim; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t r = begin; r < end; ++r) {
      const double v = cloud_.point(order_[r])[a];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      axis = static_cast<int>(a);
    }
  }
  if (best_spread <= 0.0) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  auto key_less = [&](Index x, Index y) {
    const double vx = cloud_.point(x)[axis], vy = cloud_.point(y)[axis];
    return vx < vy || (vx == vy && x < y);
  };
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, key_less);
  const double split = cloud_.point(order_[mid])[axis];
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const std::size_t left = build(begin, mid, depth + 1);
  const std::size_t right = build(mid, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> KdTree::nearest(std::size_t query, std::size_t k) const {
  Heap heap(closer);
  const auto q = cloud_.point(query);

  auto visit = [&](auto&& self, std::size_t id) -> void {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (std::size_t r = node.begin; r < node.end; ++r) {
        const Index j = order_[r];
        if (static_cast<std::size_t>(j) == query) continue;
        const double bound =
            heap.size() < k ? std::numeric_limits<double>::infinity() : heap.top().sq_dist;
        const Neighbor cand{j, squared_distance_bounded(q, cloud_.point(j), bound)};
        if (heap.size() < k) {
          heap.push(cand);
        } else if (closer(cand, heap.top())) {
          heap.pop();
          heap.push(cand);
        }
      }
      return;
    }
    // Left holds coordinates <= split, right holds coordinates >= split.
    const double diff = q[node.axis] - node.split;
    const std::size_t near = diff < 0.0 ? node.left : node.right;
    const std::size_t far = diff < 0.0 ? node.right : node.left;
    self(self, near);
    if (heap.size() < k || diff * diff <= heap.top().sq_dist) self(self, far);
  };
  if (!nodes_.empty()) visit(visit, 0);

  std::vector<Neighbor> out(heap.size());
  for (std::size_t r = out.size(); r-- > 0;) {
    out[r] = heap.top();
    heap.pop();
  }
  return out;
}

}  // namespace ilap
