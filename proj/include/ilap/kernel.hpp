#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace ilap {

enum class KernelFamily { Gaussian, Tent, QuarticSelfTuning, Tabulated };

/// Radial kernel eta(t), t >= 0.
///
///   Gaussian:          exp(-t^2 / h^2), unbounded support
///   Tent:              max(0, 1 - t / h), support h
///   QuarticSelfTuning: per-row bandwidth from the k_sigma-th neighbor,
///                      (exp(-t^4 / sigma^4))^2; only meaningful through
///                      self_tuning_weights
///   Tabulated:         piecewise-linear through (t_k, eta_k), zero after the
///                      last node
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double bandwidth = 1.0;
  int k_sigma = 20;
  std::vector<std::pair<double, double>> table;

  static KernelSpec gaussian(double sigma);
  static KernelSpec tent(double radius = 1.0);
  static KernelSpec quartic_self_tuning(int k_sigma);
  static KernelSpec tabulated(std::vector<std::pair<double, double>> nodes);

  /// Throws InvalidParameter unless eta is nonincreasing with eta(0) > 0.
  void validate() const;

  double operator()(double t) const;

  /// Radius beyond which eta vanishes; +inf for the Gaussian.
  double support_radius() const;
  bool compact() const { return support_radius() < std::numeric_limits<double>::infinity(); }
};

}  // namespace ilap
