#include "ilap/labels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ilap/error.hpp"

namespace ilap {

LabelAssignment::LabelAssignment(std::size_t node_count,
                                 std::vector<std::pair<Index, double>> labels)
    : is_labeled_(node_count, false), values_(node_count, 0.0) {
  require(!labels.empty(), "label set is empty");
  for (const auto& [i, v] : labels) {
    require(i >= 0 && static_cast<std::size_t>(i) < node_count,
            "label index " + std::to_string(i) + " out of range");
    require(!is_labeled_[i], "label index " + std::to_string(i) + " given twice");
    require(std::isfinite(v), "label value for node " + std::to_string(i) + " is not finite");
    is_labeled_[i] = true;
    values_[i] = v;
  }
  for (std::size_t i = 0; i < node_count; ++i)
    (is_labeled_[i] ? labeled_ : unlabeled_).push_back(static_cast<Index>(i));
  min_ = max_ = values_[labeled_.front()];
  for (Index i : labeled_) {
    min_ = std::min(min_, values_[i]);
    max_ = std::max(max_, values_[i]);
  }
}

void LabelAssignment::pin(std::vector<double>& u) const {
  for (Index i : labeled_) u[i] = values_[i];
}

LabelAssignment LabelAssignment::transformed(double scale, double shift) const {
  std::vector<std::pair<Index, double>> out;
  out.reserve(labeled_.size());
  for (Index i : labeled_) out.emplace_back(i, scale * values_[i] + shift);
  return LabelAssignment(node_count(), std::move(out));
}

}  // namespace ilap
