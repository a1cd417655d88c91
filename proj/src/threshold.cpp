#include "ilap/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ilap/error.hpp"

namespace ilap {

std::vector<double> threshold_subproblem(std::span<const double> a, std::span<const double> c) {
  const std::size_t n = a.size();
  require(c.size() == n, "threshold_subproblem: a and c differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    require(a[i] > 0.0 && std::isfinite(a[i]), "threshold_subproblem: weights must be positive");
    require(c[i] >= 0.0 && std::isfinite(c[i]), "threshold_subproblem: targets must be nonnegative");
  }
  std::vector<double> x(c.begin(), c.end());
  if (n == 0) return x;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return c[i] > c[j]; });

  // Merge equal targets: group g covers order[first[g] .. first[g+1]).
  struct Group {
    double target;
    double weight;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> first;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    if (!groups.empty() && c[i] == groups.back().target) {
      groups.back().weight += a[i];
    } else {
      groups.push_back({c[i], a[i]});
      first.push_back(r);
    }
  }
  first.push_back(n);

  double phi = 0.0;
  for (const auto& g : groups) phi = std::max(phi, g.weight * g.target / (g.weight + 1.0));

  // Groups are sorted by decreasing target, so those above phi form a prefix.
  std::size_t above = 0;
  while (above < groups.size() && groups[above].target > phi) ++above;
  if (above == 0) return x;

  double level = phi;
  std::size_t shared = 1;
  if (above > 1) {
    // Largest T in [2, above] with sum_{g<T} A_g delta_g <= c_T, where A_g is
    // the running weight and delta_g = c_g - c_{g+1}. The left side grows and
    // c_T shrinks with T, so the feasible set is a prefix.
    double prefix_weight = 0.0, excess = 0.0;
    for (std::size_t t = 1; t < above; ++t) {
      prefix_weight += groups[t - 1].weight;
      excess += prefix_weight * (groups[t - 1].target - groups[t].target);
      if (excess <= groups[t].target)
        shared = t + 1;
      else
        break;
    }
    double num = 0.0, den = 1.0;
    for (std::size_t g = 0; g < shared; ++g) {
      num += groups[g].weight * groups[g].target;
      den += groups[g].weight;
    }
    level = num / den;
  }
  for (std::size_t r = first[0]; r < first[shared]; ++r) x[order[r]] = level;
  return x;
}

double threshold_objective(std::span<const double> x, std::span<const double> a,
                           std::span<const double> c) {
  double peak = 0.0, fit = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    peak = std::max(peak, x[i] * x[i]);
    fit += a[i] * (x[i] - c[i]) * (x[i] - c[i]);
  }
  return peak + fit;
}

}  // namespace ilap
