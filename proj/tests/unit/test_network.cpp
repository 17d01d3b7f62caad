#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "punn/errors.hpp"
#include "punn/network.hpp"

namespace punn {
namespace {

// k = 2, one hidden node, L = 2.
Network single_node(double w0, double w1, double coef, double bias) {
  Network net(2, 2);
  net.node(0).set_input(0, w0);
  net.node(0).set_input(1, w1);
  net.node(0).set_output(0, coef);
  net.set_bias(0, bias);
  return net;
}

Dataset one_row(std::vector<double> x, std::size_t label, std::size_t classes = 2) {
  const std::size_t k = x.size();
  return Dataset(k, classes, std::move(x), {label});
}

TEST(EvaluateOutputs, HandEvaluated) {
  const auto f = evaluate_outputs(single_node(1, 2, 2, 1), std::vector{1.5, 2.0});
  ASSERT_EQ(f.size(), 1u);
  EXPECT_DOUBLE_EQ(f[0], 13.0);
}

TEST(EvaluateOutputs, ZeroWeightsGiveZero) {
  Network net(3, 4, 2);
  net.node(0).set_input(1, 0.0);
  const auto f = evaluate_outputs(net, std::vector{1.1, 1.7, 1.9});
  ASSERT_EQ(f.size(), 3u);
  for (double v : f) EXPECT_EQ(v, 0.0);
}

TEST(EvaluateOutputs, EmptyProductIsOne) {
  Network net(2, 2);
  net.node(0).set_output(0, 3.0);
  net.set_bias(0, 1.0);
  EXPECT_DOUBLE_EQ(evaluate_outputs(net, std::vector{1.3, 1.9})[0], 4.0);
}

TEST(EvaluateOutputs, UnlinkedOutputContributesNothing) {
  Network net(1, 3);
  net.node(0).set_input(0, 1.0);
  net.node(0).set_output(1, 2.0);
  const auto f = evaluate_outputs(net, std::vector{1.5});
  EXPECT_EQ(f[0], 0.0);
  EXPECT_DOUBLE_EQ(f[1], 3.0);
}

TEST(EvaluateOutputs, Errors) {
  const Network net = single_node(1, 1, 1, 0);
  EXPECT_THROW(evaluate_outputs(net, std::vector{1.0}), DimensionError);
  EXPECT_THROW(evaluate_outputs(net, std::vector{1.0, 0.0}), DomainError);
  EXPECT_THROW(evaluate_outputs(net, std::vector{-1.0, 1.0}), DomainError);
}

TEST(ClassProbabilities, Examples) {
  auto p = class_probabilities(std::vector{0.0}).probabilities;
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);

  p = class_probabilities(std::vector{std::log(3.0)}).probabilities;
  EXPECT_NEAR(p[0], 0.75, 1e-15);
  EXPECT_NEAR(p[1], 0.25, 1e-15);

  p = class_probabilities(std::vector{0.0, 0.0}).probabilities;
  ASSERT_EQ(p.size(), 3u);
  for (double v : p) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(ClassProbabilities, LargeOutputsStayFinite) {
  const auto p = class_probabilities(std::vector{800.0, -800.0}).probabilities;
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_GE(p[1], 0.0);
}

TEST(ClassProbabilities, NonFiniteThrows) {
  EXPECT_THROW(class_probabilities(std::vector{std::nan("")}), NumericError);
  EXPECT_THROW(class_probabilities(std::vector<double>{0.0, INFINITY}), NumericError);
  EXPECT_THROW(softmax(std::vector<double>{}), ArgumentError);
}

TEST(PredictClass, Examples) {
  EXPECT_EQ(argmax_class(std::vector{2.0}), 0u);
  EXPECT_EQ(argmax_class(std::vector{-2.0}), 1u);
  EXPECT_EQ(argmax_class(std::vector{0.0, 0.0}), 0u);
  // Tie with the reference class goes to the lower index.
  EXPECT_EQ(argmax_class(std::vector{-1.0, 0.0}), 1u);
  EXPECT_EQ(predict_class(single_node(1, 0, 1, -10), std::vector{1.5, 1.5}), 1u);
}

TEST(CrossEntropy, Examples) {
  Network zero(1, 2);
  EXPECT_NEAR(cross_entropy_error(zero, one_row({1.5}, 0)), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(cross_entropy_error(zero, one_row({1.5}, 1)), std::numbers::ln2, 1e-15);

  Network net(1, 2);
  net.set_bias(0, std::log(3.0));
  const Dataset two(1, 2, {1.2, 1.8}, {0, 1});
  EXPECT_NEAR(cross_entropy_error(net, two), (-std::log(0.75) - std::log(0.25)) / 2, 1e-12);
  EXPECT_NEAR(cross_entropy_error(net, two), 0.836988, 1e-6);
}

TEST(CrossEntropy, Errors) {
  Network net(1, 2);
  EXPECT_THROW(cross_entropy_error(net, Dataset{}), ArgumentError);
  EXPECT_THROW(cross_entropy_error(Network(2, 2), one_row({1.5}, 0)), DimensionError);
  EXPECT_THROW(correct_classification_rate(net, Dataset{}), ArgumentError);
}

TEST(Fitness, Examples) {
  EXPECT_EQ(fitness_from_error(0.0), 1.0);
  EXPECT_EQ(fitness_from_error(1.0), 0.5);
  EXPECT_NEAR(fitness_from_error(std::numbers::ln2), 0.59061, 1e-5);
  EXPECT_GT(fitness_from_error(0.3), fitness_from_error(0.4));
}

TEST(CorrectClassification, Examples) {
  Network says_zero(1, 2);
  says_zero.set_bias(0, 1.0);
  EXPECT_EQ(correct_classification_rate(says_zero, Dataset(1, 2, {1.1, 1.2}, {0, 0})), 100.0);
  EXPECT_EQ(correct_classification_rate(says_zero, Dataset(1, 2, {1.1, 1.2}, {0, 1})), 50.0);
  EXPECT_EQ(correct_classification_rate(says_zero, Dataset(1, 2, {1, 1.1, 1.2, 1.3}, {1, 1, 1, 1})), 0.0);
}

TEST(CountConnections, Examples) {
  EXPECT_EQ(count_connections(single_node(0.5, 0.5, 1, 0)), 4u);
  EXPECT_EQ(count_connections(Network(2, 2)), 1u);

  // 8 inputs, 4 nodes, one output: at most 8*4 + 4 + 1.
  Network full(8, 2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 8; ++i) full.node(j).set_input(i, 1.0);
    full.node(j).set_output(0, 1.0);
  }
  EXPECT_EQ(count_connections(full), 37u);
}

TEST(RandomNetwork, DensityOneIsFullyConnected) {
  Rng rng = make_rng(5);
  const Network net = random_network(rng, 4, 1, 3, {}, 1.0);
  ASSERT_EQ(net.hidden_count(), 1u);
  EXPECT_EQ(net.node(0).input_link_count(), 4u);
  EXPECT_EQ(net.node(0).output_link_count(), 2u);
  EXPECT_TRUE(net.weights_within({}));
}

TEST(RandomNetwork, SameSeedSameNetwork) {
  Rng a = make_rng(99);
  Rng b = make_rng(99);
  EXPECT_EQ(random_network(a, 6, 4, 3), random_network(b, 6, 4, 3));
}

TEST(RandomNetwork, HiddenCountUniform) {
  Rng rng = make_rng(1234);
  const int draws = 10000;
  std::array<int, 5> freq{};
  for (int n = 0; n < draws; ++n) {
    const Network net = random_network(rng, 3, 4, 2);
    ASSERT_GE(net.hidden_count(), 1u);
    ASSERT_LE(net.hidden_count(), 4u);
    ++freq[net.hidden_count()];
    for (const auto& node : net.nodes()) ASSERT_GE(node.input_link_count(), 1u);
    ASSERT_TRUE(net.weights_within({}));
  }
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  for (int m = 1; m <= 4; ++m) EXPECT_LE(std::abs(freq[m] - draws * 0.25), 4 * sigma) << m;
}

TEST(RandomNetwork, BadArguments) {
  Rng rng = make_rng(1);
  EXPECT_THROW(random_network(rng, 3, 0, 2), ArgumentError);
  EXPECT_THROW(random_network(rng, 3, 2, 1), ArgumentError);
  EXPECT_THROW(random_network(rng, 3, 2, 2, {}, 0.0), ArgumentError);
  EXPECT_THROW(random_network(rng, 3, 2, 2, {1.0, -1.0}), ArgumentError);
}

TEST(Network, StructureErrors) {
  Network net(2, 2);
  EXPECT_THROW(net.remove_node(0), ArgumentError);
  EXPECT_THROW(net.add_node(HiddenNode(3, 1)), DimensionError);
}

TEST(ModelText, RoundTripIsExact) {
  Rng rng = make_rng(77);
  for (int n = 0; n < 50; ++n) {
    const SavedModel model{random_network(rng, 5, 4, 3), 4};
    EXPECT_EQ(model_from_text(model_to_text(model)), model);
  }
}

TEST(ModelText, RejectsMalformed) {
  EXPECT_THROW(model_from_text(""), ParseError);
  EXPECT_THROW(model_from_text("punn-model 2\n"), ParseError);
  const SavedModel model{single_node(1, 2, 3, 4), 2};
  std::string text = model_to_text(model);
  EXPECT_THROW(model_from_text(text.substr(0, text.size() / 2)), ParseError);
  EXPECT_THROW(read_model("/nonexistent/model.txt"), IoError);
}

}  // namespace
}  // namespace punn
