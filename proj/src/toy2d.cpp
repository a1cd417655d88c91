#include "ilap/toy2d.hpp"

#include <array>
#include <cmath>

#include "ilap/error.hpp"

namespace ilap {

Toy2d make_toy2d(const Toy2dOptions& options) {
  require(options.grid >= 2, "toy grid needs at least 2 points per side");
  const std::array<std::array<double, 2>, 3> label_points{{
      {std::sqrt(2.0) / 2.0, 1.0 - std::sqrt(3.0) / 10.0},
      {std::sqrt(2.0) / 10.0, std::sqrt(5.0) / 20.0},
      {std::sqrt(3.0) / 3.0, std::sqrt(11.0) / 4.0},
  }};
  auto f = [](double x, double y) { return std::sin(x) * std::cos(y); };

  Toy2d toy;
  std::vector<double> coords;
  coords.reserve(2 * (3 + options.grid * options.grid));
  for (const auto& p : label_points) coords.insert(coords.end(), p.begin(), p.end());
  const double h = 1.0 / static_cast<double>(options.grid - 1);
  for (std::size_t i = 0; i < options.grid; ++i)
    for (std::size_t j = 0; j < options.grid; ++j) {
      coords.push_back(static_cast<double>(i) * h);
      coords.push_back(static_cast<double>(j) * h);
    }
  toy.cloud = PointCloud(2, std::move(coords));

  toy.truth.resize(toy.cloud.size());
  for (std::size_t i = 0; i < toy.cloud.size(); ++i) {
    const auto p = toy.cloud.point(i);
    toy.truth[i] = f(p[0], p[1]);
  }
  std::vector<std::pair<Index, double>> labels;
  for (Index i = 0; i < 3; ++i) labels.emplace_back(i, toy.truth[i]);
  toy.labels = LabelAssignment(toy.cloud.size(), std::move(labels));
  toy.graph = knn_graph(toy.cloud, options.k, KernelSpec::gaussian(options.sigma));
  return toy;
}

}  // namespace ilap
