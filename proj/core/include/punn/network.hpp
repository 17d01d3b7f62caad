#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "punn/dataset.hpp"
#include "punn/random.hpp"

namespace punn {

/// Closed interval every exponent, coefficient and bias must lie in.
struct WeightInterval {
  double lo = -5.0;
  double hi = 5.0;

  double clamp(double w) const { return w < lo ? lo : (w > hi ? hi : w); }
  bool contains(double w) const { return w >= lo && w <= hi; }
};

/// One product unit. Absent links always store a zero weight, so the unit's
/// value prod_i x_i^{w_i} can be computed over all inputs without masking.
struct HiddenNode {
  std::vector<double> exponents;          // one per input
  std::vector<std::uint8_t> input_links;  // 1 = link present
  std::vector<double> coefficients;       // one per trainable output
  std::vector<std::uint8_t> output_links;

  HiddenNode() = default;
  HiddenNode(std::size_t inputs, std::size_t outputs);

  std::size_t input_link_count() const;
  std::size_t output_link_count() const;
  bool has_input(std::size_t i) const { return input_links[i] != 0; }
  bool has_output(std::size_t l) const { return output_links[l] != 0; }

  void set_input(std::size_t i, double exponent);
  void clear_input(std::size_t i);
  void set_output(std::size_t l, double coefficient);
  void clear_output(std::size_t l);

  friend bool operator==(const HiddenNode&, const HiddenNode&) = default;
};

/// Product-unit network k : m : (L - 1). Hidden nodes are product units,
/// output nodes are linear with a bias, and the last class L - 1 is the
/// reference class whose output is identically zero.
class Network {
 public:
  Network() = default;

  /// Network with `hidden` link-free nodes and zero biases.
  Network(std::size_t inputs, std::size_t classes, std::size_t hidden = 1);

  std::size_t inputs() const { return inputs_; }
  std::size_t classes() const { return classes_; }
  std::size_t outputs() const { return classes_ - 1; }
  std::size_t hidden_count() const { return nodes_.size(); }

  const HiddenNode& node(std::size_t j) const { return nodes_[j]; }
  HiddenNode& node(std::size_t j) { return nodes_[j]; }
  const std::vector<HiddenNode>& nodes() const { return nodes_; }

  double bias(std::size_t l) const { return biases_[l]; }
  void set_bias(std::size_t l, double b) { biases_[l] = b; }
  const std::vector<double>& biases() const { return biases_; }

  /// Appends a node; throws DimensionError if its extents do not match.
  void add_node(HiddenNode node);
  /// Removes node j; throws ArgumentError when it is the last node.
  void remove_node(std::size_t j);

  /// True when every weight (present or not) lies in the interval.
  bool weights_within(const WeightInterval& interval) const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::size_t inputs_ = 0;
  std::size_t classes_ = 0;
  std::vector<HiddenNode> nodes_;
  std::vector<double> biases_;
};

/// Class membership probabilities, one per class (reference class last).
struct ClassDistribution {
  std::vector<double> probabilities;
};

/// Linear outputs f_l(x) = b_l + sum_j c_jl prod_i x_i^{w_ji} for the L - 1
/// trainable outputs. Throws DimensionError when the pattern length differs
/// from the input count and DomainError on a nonpositive component.
std::vector<double> evaluate_outputs(const Network& net, std::span<const double> pattern);

/// Shift-stable softmax over a full logit vector. Throws ArgumentError on an
/// empty vector and NumericError on a non-finite entry.
ClassDistribution softmax(std::span<const double> logits);

/// Softmax over the given outputs plus an implicit zero for the reference
/// class. Throws NumericError on a non-finite output.
ClassDistribution class_probabilities(std::span<const double> outputs);

/// Index of the largest output, counting the reference class as 0 and
/// breaking ties toward the lower index.
std::size_t argmax_class(std::span<const double> outputs);

std::size_t predict_class(const Network& net, std::span<const double> pattern);

/// Mean cross-entropy l(g) over the dataset, computed in log-sum-exp form.
/// Throws ArgumentError on an empty dataset.
double cross_entropy_error(const Network& net, const Dataset& data);

/// A(g) = 1 / (1 + l).
double fitness_from_error(double error);
double fitness(const Network& net, const Dataset& data);

/// Percentage of patterns whose predicted class equals the label.
double correct_classification_rate(const Network& net, const Dataset& data);

/// Input->hidden links + hidden->output links + one bias per trainable output.
std::size_t count_connections(const Network& net);

struct NodeShape {
  std::size_t inputs = 0;
  std::size_t classes = 0;
  WeightInterval weights;
  double link_density = 0.5;
};

/// Fresh product unit: each input link present with probability
/// link_density (at least one, by redraw), linked to every output.
HiddenNode random_hidden_node(Rng& rng, const NodeShape& shape);

/// Random network with a uniform number of hidden nodes in [1, max_hidden]
/// and uniformly drawn biases.
Network random_network(Rng& rng, std::size_t inputs, std::size_t max_hidden,
                       std::size_t classes, const WeightInterval& weights = {},
                       double link_density = 0.5);

/// A network together with the hidden-node bound it was trained under.
struct SavedModel {
  Network network;
  std::size_t max_hidden = 0;

  friend bool operator==(const SavedModel&, const SavedModel&) = default;
};

/// Versioned text form with 17 significant digits per weight, so
/// model_from_text(model_to_text(m)) == m exactly.
std::string model_to_text(const SavedModel& model);
SavedModel model_from_text(std::string_view text);

void write_model(const std::string& path, const SavedModel& model);
SavedModel read_model(const std::string& path);

}  // namespace punn
