#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace punn {

/// Numeric classification data ready for training: an N x k pattern matrix
/// with strictly positive entries (the preprocessing pipeline maps them to
/// [1, 2]) and one class label per pattern in [0, L). One-hot targets are
/// exposed through target().
///
/// The natural logarithm of every pattern entry is cached at construction so
/// product units can be evaluated as exp(sum w_i * ln x_i).
class Dataset {
 public:
  Dataset() = default;

  /// Throws DimensionError on shape mismatch, DomainError on a nonpositive or
  /// non-finite pattern entry, ArgumentError on classes < 2 or a label >= classes.
  Dataset(std::size_t inputs, std::size_t classes, std::vector<double> patterns,
          std::vector<std::size_t> labels, std::vector<std::string> feature_names = {},
          std::vector<std::string> class_names = {});

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t inputs() const { return inputs_; }
  std::size_t classes() const { return classes_; }

  std::span<const double> pattern(std::size_t i) const {
    return {patterns_.data() + i * inputs_, inputs_};
  }
  std::span<const double> log_pattern(std::size_t i) const {
    return {log_patterns_.data() + i * inputs_, inputs_};
  }
  std::size_t label(std::size_t i) const { return labels_[i]; }
  double target(std::size_t i, std::size_t j) const { return labels_[i] == j ? 1.0 : 0.0; }

  const std::vector<double>& patterns() const { return patterns_; }
  const std::vector<std::size_t>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

  /// Number of patterns per class, indexed by label.
  std::vector<std::size_t> class_counts() const;

  /// Rows at the given indices, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;

 private:
  std::size_t inputs_ = 0;
  std::size_t classes_ = 0;
  std::vector<double> patterns_;
  std::vector<double> log_patterns_;
  std::vector<std::size_t> labels_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
};

}  // namespace punn
