#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "punn/evolution.hpp"
#include "punn/network.hpp"
#include "punn/pipeline.hpp"
#include "punn/two_stage.hpp"

namespace punn::testing {

namespace {

PropertyResult fail(std::size_t cases, std::string detail) { return {false, cases, std::move(detail)}; }

// Term-by-term network function with std::pow, in the same summation order
// as the forward pass.
std::vector<double> oracle_outputs(const Network& net, const std::vector<double>& x) {
  std::vector<double> f(net.outputs());
  for (std::size_t l = 0; l < net.outputs(); ++l) {
    double sum = net.bias(l);
    for (std::size_t j = 0; j < net.hidden_count(); ++j) {
      const auto& node = net.node(j);
      if (!node.has_output(l)) continue;
      double term = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (node.has_input(i)) term *= std::pow(x[i], node.exponents[i]);
      }
      sum += node.coefficients[l] * term;
    }
    f[l] = sum;
  }
  return f;
}

bool valid_structure(const Network& net, std::size_t max_hidden, std::string& why) {
  const WeightInterval bounds{};
  if (net.hidden_count() < 1 || net.hidden_count() > max_hidden) {
    why = fmt::format("{} hidden nodes outside [1, {}]", net.hidden_count(), max_hidden);
    return false;
  }
  if (!net.weights_within(bounds)) {
    why = "weight outside [-5, 5]";
    return false;
  }
  if (net.biases().size() != net.classes() - 1) {
    why = "output count is not L - 1";
    return false;
  }
  for (const auto& node : net.nodes()) {
    if (node.exponents.size() != net.inputs() || node.coefficients.size() != net.outputs()) {
      why = "node extents differ from the network";
      return false;
    }
    for (std::size_t i = 0; i < net.inputs(); ++i) {
      if (!node.has_input(i) && node.exponents[i] != 0.0) {
        why = "absent input link carries a weight";
        return false;
      }
    }
    for (std::size_t l = 0; l < net.outputs(); ++l) {
      if (!node.has_output(l) && node.coefficients[l] != 0.0) {
        why = "absent output link carries a weight";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

PropertyResult check_softmax(std::uint64_t seed, std::size_t cases) {
  Rng rng = make_rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t classes = uniform_count(rng, 2, 8);
    std::vector<double> outputs(classes - 1);
    const double scale = c % 3 == 0 ? 500.0 : 20.0;
    for (double& f : outputs) f = uniform_real(rng, -scale, scale);

    const auto dist = class_probabilities(outputs);
    const double sum = std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) return fail(c, fmt::format("case {}: sum {:.17g}", c, sum));

    std::vector<double> shifted(outputs);
    shifted.push_back(0.0);
    const double k = uniform_real(rng, -1000.0, 1000.0);
    for (double& z : shifted) z += k;
    const auto moved = softmax(shifted);
    for (std::size_t l = 0; l < classes; ++l) {
      const double d = std::abs(moved.probabilities[l] - dist.probabilities[l]);
      if (d > 1e-12) return fail(c, fmt::format("case {}: shift by {} moved p{} by {:.3g}", c, k, l, d));
    }
  }
  return {true, cases, ""};
}

PropertyResult check_cross_entropy_forms(std::uint64_t seed, std::size_t cases) {
  Rng rng = make_rng(seed);
  std::size_t underflow = 0;
  for (std::size_t c = 0; c < cases;) {
    const std::size_t inputs = uniform_count(rng, 1, 4);
    const std::size_t classes = uniform_count(rng, 2, 4);
    const std::size_t rows = uniform_count(rng, 1, 20);
    const Dataset data = random_dataset(rng, rows, inputs, classes);
    const Network net = random_network(rng, inputs, 3, classes);

    // Direct form: -(1/N) sum_n sum_j y_nj ln g_j(x_n).
    double direct = 0.0;
    for (std::size_t n = 0; n < rows; ++n) {
      const auto g = class_probabilities(evaluate_outputs(net, data.pattern(n)));
      for (std::size_t j = 0; j < classes; ++j) direct -= data.target(n, j) * std::log(g.probabilities[j]);
    }
    direct /= static_cast<double>(rows);
    const double lse = cross_entropy_error(net, data);
    if (!std::isfinite(direct)) {
      // g underflowed to 0 in the direct form; the log-domain form stays exact.
      ++underflow;
      if (!std::isfinite(lse)) return fail(c, fmt::format("case {}: non-finite error", c));
      continue;
    }
    const double d = std::abs(direct - lse);
    if (d > 1e-9 * std::max(1.0, std::abs(direct))) {
      return fail(c, fmt::format("case {}: direct {:.17g} vs log-sum-exp {:.17g}", c, direct, lse));
    }
    ++c;
  }
  return {true, cases, fmt::format("{} draws with an underflowing probability redrawn", underflow)};
}

PropertyResult check_forward_oracle(std::uint64_t seed, std::size_t cases) {
  Rng rng = make_rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t inputs = uniform_count(rng, 1, 3);
    const std::size_t classes = uniform_count(rng, 2, 4);
    const Network net = random_sparse_network(rng, inputs, classes, 3);
    std::vector<double> x(inputs);
    for (double& v : x) v = uniform_real(rng, 1.0, 2.0);
    const auto got = evaluate_outputs(net, x);
    const auto want = oracle_outputs(net, x);
    for (std::size_t l = 0; l < want.size(); ++l) {
      if (std::abs(got[l] - want[l]) > 1e-12) {
        return fail(c, fmt::format("case {}: output {} is {:.17g}, oracle {:.17g}", c, l, got[l], want[l]));
      }
    }
  }
  return {true, cases, ""};
}

PropertyResult check_elitism(std::size_t seeds, std::size_t generations) {
  const Dataset train = toy_problem(7);
  EaParams params = small_params(20, generations, 3);
  params.early_stopping = false;
  for (std::size_t s = 0; s < seeds; ++s) {
    Rng rng = make_rng(s);
    EvalCounter counter;
    Population pop = initialize_population(rng, params, train, counter);
    MutationState state = MutationState::from(params);
    double previous = pop.best().fitness;
    for (std::size_t g = 1; g <= generations; ++g) {
      evolve_generation(pop, state, rng, params, train, counter);
      if (pop.best().fitness < previous) {
        return fail(s, fmt::format("seed {} generation {}: best {:.17g} < {:.17g}", s, g,
                                   pop.best().fitness, previous));
      }
      previous = pop.best().fitness;
    }
  }
  return {true, seeds, ""};
}

PropertyResult check_structural_bounds(std::uint64_t seed, std::size_t mutations) {
  Rng rng = make_rng(seed);
  std::size_t done = 0;
  while (done < mutations) {
    const std::size_t inputs = uniform_count(rng, 1, 6);
    const std::size_t classes = uniform_count(rng, 2, 4);
    EaParams params = small_params(10, 1, uniform_count(rng, 1, 5));
    Individual ind;
    ind.net = random_network(rng, inputs, params.max_hidden, classes);
    // Chains of 50 let the operators reach both node bounds.
    for (int step = 0; step < 50 && done < mutations; ++step, ++done) {
      ind.fitness = uniform_real(rng, 0.0, 1.0);
      ind = structural_mutation(ind, rng, params);
      std::string why;
      if (!valid_structure(ind.net, params.max_hidden, why)) {
        return fail(done, fmt::format("mutation {}: {}", done, why));
      }
    }
  }
  return {true, mutations, ""};
}

PropertyResult check_determinism(std::uint64_t seed) {
  const Dataset train = toy_problem(11);
  EaParams params = small_params(20, 15, 3);

  auto single = [&] {
    Rng rng = make_rng(seed);
    EvalCounter counter;
    Population pop = initialize_population(rng, params, train, counter);
    MutationState state = MutationState::from(params);
    auto result = run_ea(pop, state, rng, params, train, counter);
    return std::pair{model_to_text({result.best.net, params.max_hidden}), counter.count};
  };
  auto two_stage = [&] {
    auto result = run_tsea(TseaParams{params}, seed, train);
    return std::pair{model_to_text({result.best.net, params.max_hidden + 1}), result.counter.count};
  };
  if (single() != single()) return fail(1, "single runs with the same seed differ");
  if (two_stage() != two_stage()) return fail(2, "two-stage runs with the same seed differ");
  return {true, 2, ""};
}

PropertyResult check_split_partition(std::uint64_t seed, std::size_t datasets) {
  Rng rng = make_rng(seed);
  for (std::size_t d = 0; d < datasets; ++d) {
    const std::size_t classes = uniform_count(rng, 2, 5);
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < classes; ++c) {
      labels.insert(labels.end(), uniform_count(rng, 2, 60), c);
    }
    std::vector<double> x(labels.size());
    for (double& v : x) v = uniform_real(rng, 1.0, 2.0);
    const Dataset data(1, classes, std::move(x), labels);
    const double ratio = d % 2 == 0 ? 0.75 : uniform_real(rng, 0.3, 0.9);
    const auto split = stratified_holdout(data, ratio, rng());

    std::vector<std::size_t> all(split.train_rows);
    all.insert(all.end(), split.test_rows.begin(), split.test_rows.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(data.size());
    std::iota(expected.begin(), expected.end(), 0);
    if (all != expected) return fail(d, fmt::format("dataset {}: not a partition", d));

    const auto counts = data.class_counts();
    const auto train_counts = split.train.class_counts();
    for (std::size_t c = 0; c < classes; ++c) {
      const double exact = ratio * static_cast<double>(counts[c]);
      if (std::abs(static_cast<double>(train_counts[c]) - exact) > 1.0) {
        return fail(d, fmt::format("dataset {} class {}: {} train rows, exact share {:.3f}", d, c,
                                   train_counts[c], exact));
      }
    }
  }
  return {true, datasets, ""};
}

}  // namespace punn::testing
