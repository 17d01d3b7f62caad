#include "punn/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "punn/errors.hpp"

namespace punn {

HiddenNode::HiddenNode(std::size_t inputs, std::size_t outputs)
    : exponents(inputs, 0.0),
      input_links(inputs, 0),
      coefficients(outputs, 0.0),
      output_links(outputs, 0) {}

std::size_t HiddenNode::input_link_count() const {
  return static_cast<std::size_t>(std::count(input_links.begin(), input_links.end(), 1));
}

std::size_t HiddenNode::output_link_count() const {
  return static_cast<std::size_t>(std::count(output_links.begin(), output_links.end(), 1));
}

void HiddenNode::set_input(std::size_t i, double exponent) {
  input_links[i] = 1;
  exponents[i] = exponent;
}

void HiddenNode::clear_input(std::size_t i) {
  input_links[i] = 0;
  exponents[i] = 0.0;
}

void HiddenNode::set_output(std::size_t l, double coefficient) {
  output_links[l] = 1;
  coefficients[l] = coefficient;
}

void HiddenNode::clear_output(std::size_t l) {
  output_links[l] = 0;
  coefficients[l] = 0.0;
}

Network::Network(std::size_t inputs, std::size_t classes, std::size_t hidden)
    : inputs_(inputs), classes_(classes), biases_(classes >= 2 ? classes - 1 : 0, 0.0) {
  if (inputs == 0) throw ArgumentError("network needs at least one input");
  if (classes < 2) throw ArgumentError("network needs at least two classes");
  if (hidden == 0) throw ArgumentError("network needs at least one hidden node");
  nodes_.assign(hidden, HiddenNode(inputs, classes - 1));
}

void Network::add_node(HiddenNode node) {
  if (node.exponents.size() != inputs_ || node.input_links.size() != inputs_ ||
      node.coefficients.size() != outputs() || node.output_links.size() != outputs()) {
    throw DimensionError("hidden node extents do not match the network");
  }
  nodes_.push_back(std::move(node));
}

void Network::remove_node(std::size_t j) {
  if (nodes_.size() <= 1) throw ArgumentError("cannot remove the last hidden node");
  if (j >= nodes_.size()) throw ArgumentError(fmt::format("hidden node {} out of range", j));
  nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(j));
}

bool Network::weights_within(const WeightInterval& interval) const {
  for (const auto& n : nodes_) {
    for (double w : n.exponents)
      if (!interval.contains(w)) return false;
    for (double c : n.coefficients)
      if (!interval.contains(c)) return false;
  }
  return std::all_of(biases_.begin(), biases_.end(),
                     [&](double b) { return interval.contains(b); });
}

std::vector<double> evaluate_outputs(const Network& net, std::span<const double> pattern) {
  if (pattern.size() != net.inputs()) {
    throw DimensionError(
        fmt::format("pattern has {} components, network expects {}", pattern.size(), net.inputs()));
  }
  for (double x : pattern) {
    if (!(x > 0.0)) throw DomainError(fmt::format("pattern component {} is not positive", x));
  }
  std::vector<double> out(net.biases());
  for (const auto& node : net.nodes()) {
    if (node.output_link_count() == 0) continue;
    double product = 1.0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (node.has_input(i)) product *= std::pow(pattern[i], node.exponents[i]);
    }
    for (std::size_t l = 0; l < out.size(); ++l) {
      if (node.has_output(l)) out[l] += node.coefficients[l] * product;
    }
  }
  return out;
}

ClassDistribution softmax(std::span<const double> logits) {
  if (logits.empty()) throw ArgumentError("softmax of an empty vector");
  double top = logits[0];
  for (double z : logits) {
    if (!std::isfinite(z)) throw NumericError("non-finite logit");
    top = std::max(top, z);
  }
  ClassDistribution dist;
  dist.probabilities.resize(logits.size());
  double total = 0.0;
  for (std::size_t l = 0; l < logits.size(); ++l) {
    dist.probabilities[l] = std::exp(logits[l] - top);
    total += dist.probabilities[l];
  }
  for (double& p : dist.probabilities) p /= total;
  return dist;
}

ClassDistribution class_probabilities(std::span<const double> outputs) {
  for (double f : outputs) {
    if (!std::isfinite(f)) throw NumericError("non-finite network output");
  }
  std::vector<double> logits(outputs.begin(), outputs.end());
  logits.push_back(0.0);  // reference class
  return softmax(logits);
}

std::size_t argmax_class(std::span<const double> outputs) {
  std::size_t best = outputs.size();  // reference class
  double best_value = 0.0;
  for (std::size_t l = 0; l < outputs.size(); ++l) {
    if (outputs[l] > best_value || (outputs[l] == best_value && l < best)) {
      best = l;
      best_value = outputs[l];
    }
  }
  return best;
}

std::size_t predict_class(const Network& net, std::span<const double> pattern) {
  const auto out = evaluate_outputs(net, pattern);
  return argmax_class(out);
}

namespace {

// Outputs for one pattern given its cached logarithms. `hidden` is scratch.
void outputs_from_logs(const Network& net, std::span<const double> logs,
                       std::vector<double>& hidden, std::vector<double>& out) {
  const std::size_t m = net.hidden_count();
  hidden.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& node = net.node(j);
    hidden[j] = std::exp(std::inner_product(logs.begin(), logs.end(), node.exponents.begin(), 0.0));
  }
  out.assign(net.biases().begin(), net.biases().end());
  for (std::size_t j = 0; j < m; ++j) {
    const auto& coef = net.node(j).coefficients;
    for (std::size_t l = 0; l < out.size(); ++l) out[l] += coef[l] * hidden[j];
  }
}

void check_shapes(const Network& net, const Dataset& data) {
  if (data.empty()) throw ArgumentError("dataset is empty");
  if (data.inputs() != net.inputs()) throw DimensionError("dataset and network input counts differ");
  if (data.classes() != net.classes()) throw DimensionError("dataset and network class counts differ");
}

}  // namespace

double cross_entropy_error(const Network& net, const Dataset& data) {
  check_shapes(net, data);
  std::vector<double> hidden;
  std::vector<double> out;
  double sum = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    outputs_from_logs(net, data.log_pattern(n), hidden, out);
    double top = 0.0;
    for (double f : out) top = std::max(top, f);
    double acc = std::exp(-top);
    for (double f : out) acc += std::exp(f - top);
    const std::size_t y = data.label(n);
    const double fy = y < out.size() ? out[y] : 0.0;
    sum += top + std::log(acc) - fy;
  }
  const double error = sum / static_cast<double>(data.size());
  return std::isnan(error) ? std::numeric_limits<double>::infinity() : error;
}

double fitness_from_error(double error) { return 1.0 / (1.0 + error); }

double fitness(const Network& net, const Dataset& data) {
  return fitness_from_error(cross_entropy_error(net, data));
}

double correct_classification_rate(const Network& net, const Dataset& data) {
  check_shapes(net, data);
  std::vector<double> hidden;
  std::vector<double> out;
  std::size_t correct = 0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    outputs_from_logs(net, data.log_pattern(n), hidden, out);
    if (argmax_class(out) == data.label(n)) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(data.size());
}

std::size_t count_connections(const Network& net) {
  std::size_t links = net.outputs();
  for (const auto& node : net.nodes()) links += node.input_link_count() + node.output_link_count();
  return links;
}

HiddenNode random_hidden_node(Rng& rng, const NodeShape& shape) {
  HiddenNode node(shape.inputs, shape.classes - 1);
  while (node.input_link_count() == 0) {
    for (std::size_t i = 0; i < shape.inputs; ++i) {
      if (bernoulli(rng, shape.link_density)) {
        node.set_input(i, uniform_real(rng, shape.weights.lo, shape.weights.hi));
      }
    }
  }
  for (std::size_t l = 0; l + 1 < shape.classes; ++l) {
    node.set_output(l, uniform_real(rng, shape.weights.lo, shape.weights.hi));
  }
  return node;
}

Network random_network(Rng& rng, std::size_t inputs, std::size_t max_hidden, std::size_t classes,
                       const WeightInterval& weights, double link_density) {
  if (max_hidden == 0) throw ArgumentError("max_hidden must be at least 1");
  if (!(link_density > 0.0 && link_density <= 1.0)) {
    throw ArgumentError("link density must lie in (0, 1]");
  }
  if (!(weights.lo < weights.hi)) throw ArgumentError("empty weight interval");
  if (inputs == 0 || classes < 2) throw ArgumentError("invalid network dimensions");

  const std::size_t hidden = uniform_count(rng, 1, max_hidden);
  const NodeShape shape{inputs, classes, weights, link_density};
  Network net(inputs, classes, 1);
  net.node(0) = random_hidden_node(rng, shape);
  for (std::size_t j = 1; j < hidden; ++j) net.add_node(random_hidden_node(rng, shape));
  for (std::size_t l = 0; l < net.outputs(); ++l) {
    net.set_bias(l, uniform_real(rng, weights.lo, weights.hi));
  }
  return net;
}

}  // namespace punn
