#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ilap/graph.hpp"

namespace ilap {

/// Labeled node set with fixed values; every other node is unlabeled.
class LabelAssignment {
 public:
  LabelAssignment() = default;

  /// Throws InvalidParameter on an empty set, repeated or out-of-range
  /// indices, or non-finite values.
  LabelAssignment(std::size_t node_count, std::vector<std::pair<Index, double>> labels);

  std::size_t node_count() const noexcept { return is_labeled_.size(); }
  std::size_t labeled_count() const noexcept { return labeled_.size(); }
  std::size_t unlabeled_count() const noexcept { return unlabeled_.size(); }

  bool is_labeled(std::size_t i) const { return is_labeled_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  const std::vector<Index>& labeled() const noexcept { return labeled_; }
  const std::vector<Index>& unlabeled() const noexcept { return unlabeled_; }

  double min_value() const noexcept { return min_; }
  double max_value() const noexcept { return max_; }

  /// Copies the label values into u at the labeled positions.
  void pin(std::vector<double>& u) const;

  /// Same index set with values mapped through v -> scale * v + shift.
  LabelAssignment transformed(double scale, double shift) const;

 private:
  std::vector<bool> is_labeled_;
  std::vector<double> values_;
  std::vector<Index> labeled_;
  std::vector<Index> unlabeled_;
  double min_ = 0.0, max_ = 0.0;
};

}  // namespace ilap
