#include "punn/dataset.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "punn/errors.hpp"

namespace punn {

Dataset::Dataset(std::size_t inputs, std::size_t classes, std::vector<double> patterns,
                 std::vector<std::size_t> labels, std::vector<std::string> feature_names,
                 std::vector<std::string> class_names)
    : inputs_(inputs),
      classes_(classes),
      patterns_(std::move(patterns)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      class_names_(std::move(class_names)) {
  if (inputs_ == 0) throw ArgumentError("dataset needs at least one input");
  if (classes_ < 2) throw ArgumentError("dataset needs at least two classes");
  if (patterns_.size() != labels_.size() * inputs_) {
    throw DimensionError(fmt::format("pattern matrix has {} entries, expected {} x {}",
                                     patterns_.size(), labels_.size(), inputs_));
  }
  if (!feature_names_.empty() && feature_names_.size() != inputs_) {
    throw DimensionError("feature name count differs from input count");
  }
  if (!class_names_.empty() && class_names_.size() != classes_) {
    throw DimensionError("class name count differs from class count");
  }
  for (std::size_t label : labels_) {
    if (label >= classes_) throw ArgumentError(fmt::format("label {} out of range", label));
  }
  log_patterns_.resize(patterns_.size());
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    const double x = patterns_[i];
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError(fmt::format("pattern entry {} is not strictly positive", x));
    }
    log_patterns_[i] = std::log(x);
  }
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(classes_, 0);
  for (std::size_t label : labels_) ++counts[label];
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<double> patterns;
  std::vector<std::size_t> labels;
  patterns.reserve(rows.size() * inputs_);
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= size()) throw ArgumentError(fmt::format("row {} out of range", r));
    auto p = pattern(r);
    patterns.insert(patterns.end(), p.begin(), p.end());
    labels.push_back(labels_[r]);
  }
  return Dataset(inputs_, classes_, std::move(patterns), std::move(labels), feature_names_,
                 class_names_);
}

}  // namespace punn
