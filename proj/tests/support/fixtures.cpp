#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace punn::testing {

Dataset random_dataset(Rng& rng, std::size_t rows, std::size_t inputs, std::size_t classes) {
  std::vector<double> x(rows * inputs);
  for (double& v : x) v = uniform_real(rng, 1.0, 2.0);
  std::vector<std::size_t> y(rows);
  for (std::size_t n = 0; n < rows; ++n) {
    y[n] = n < classes ? n : uniform_index(rng, classes);
  }
  return Dataset(inputs, classes, std::move(x), std::move(y));
}

Dataset toy_problem(std::uint64_t seed, std::size_t rows) {
  Rng rng = make_rng(seed);
  std::vector<double> x;
  std::vector<std::size_t> y;
  for (std::size_t n = 0; n < rows; ++n) {
    const std::size_t c = n % 2;
    const double centre = c == 0 ? 1.3 : 1.7;
    for (int d = 0; d < 2; ++d) {
      x.push_back(std::clamp(centre + gaussian(rng, 0.12), 1.0, 2.0));
    }
    y.push_back(c);
  }
  return Dataset(2, 2, std::move(x), std::move(y));
}

Network random_sparse_network(Rng& rng, std::size_t inputs, std::size_t classes,
                              std::size_t max_hidden, const WeightInterval& weights) {
  const std::size_t m = uniform_count(rng, 1, max_hidden);
  Network net(inputs, classes, m);
  for (std::size_t j = 0; j < m; ++j) {
    auto& node = net.node(j);
    for (std::size_t i = 0; i < inputs; ++i) {
      if (bernoulli(rng, 0.6)) node.set_input(i, uniform_real(rng, weights.lo, weights.hi));
    }
    for (std::size_t l = 0; l + 1 < classes; ++l) {
      if (bernoulli(rng, 0.7)) node.set_output(l, uniform_real(rng, weights.lo, weights.hi));
    }
  }
  for (std::size_t l = 0; l + 1 < classes; ++l) {
    net.set_bias(l, uniform_real(rng, weights.lo, weights.hi));
  }
  return net;
}

EaParams small_params(std::size_t pop_size, std::size_t generations, std::size_t max_hidden) {
  EaParams p;
  p.pop_size = pop_size;
  p.generations = generations;
  p.max_hidden = max_hidden;
  return p;
}

}  // namespace punn::testing
