#pragma once

#include <span>
#include <vector>

namespace ilap {

/// Exact minimizer of
///
///   phi(x) = max_i x_i^2 + sum_i a_i (x_i - c_i)^2,   a_i > 0, c_i >= 0.
///
/// Targets are sorted in decreasing order and equal targets merged into one
/// group with summed weight (the minimizer takes one value per distinct c).
/// Groups whose target does not exceed phi = max_g A_g c_g / (A_g + 1) keep
/// x = c. Among the remaining top groups, the largest prefix 1..T with
/// sum_{g<T} (A_1 + ... + A_g)(c_g - c_{g+1}) <= c_T shares the value
/// sum_{g<=T} A_g c_g / (sum_{g<=T} A_g + 1); the rest keep x = c.
///
/// Inputs may come in any order; the result is in the caller's order.
/// Throws InvalidParameter on a_i <= 0, c_i < 0 or a size mismatch.
std::vector<double> threshold_subproblem(std::span<const double> a, std::span<const double> c);

/// phi(x) for the same a, c.
double threshold_objective(std::span<const double> x, std::span<const double> a,
                           std::span<const double> c);

}  // namespace ilap
