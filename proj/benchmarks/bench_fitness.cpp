#include <benchmark/benchmark.h>

#include "punn/evolution.hpp"
#include "punn/network.hpp"
#include "punn/random.hpp"

namespace {

// Pima-sized synthetic data: 576 rows, 8 inputs, 2 classes.
punn::Dataset synthetic(std::size_t rows, std::size_t inputs, std::size_t classes) {
  punn::Rng rng = punn::make_rng(42);
  std::vector<double> x(rows * inputs);
  for (double& v : x) v = punn::uniform_real(rng, 1.0, 2.0);
  std::vector<std::size_t> y(rows);
  for (std::size_t n = 0; n < rows; ++n) y[n] = n % classes;
  return punn::Dataset(inputs, classes, std::move(x), std::move(y));
}

void BM_Fitness(benchmark::State& state) {
  const auto data = synthetic(576, 8, 2);
  punn::Rng rng = punn::make_rng(1);
  const auto net = punn::random_network(rng, 8, static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(punn::fitness(net, data));
  state.SetItemsProcessed(state.iterations() * 576);
}
BENCHMARK(BM_Fitness)->Arg(1)->Arg(4);

void BM_EvaluateOutputs(benchmark::State& state) {
  punn::Rng rng = punn::make_rng(1);
  const auto net = punn::random_network(rng, 8, 4, 3);
  const std::vector<double> x{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8};
  for (auto _ : state) benchmark::DoNotOptimize(punn::evaluate_outputs(net, x));
}
BENCHMARK(BM_EvaluateOutputs);

void BM_Generation(benchmark::State& state) {
  const auto data = synthetic(576, 8, 2);
  punn::EaParams params;
  params.pop_size = static_cast<std::size_t>(state.range(0));
  punn::Rng rng = punn::make_rng(7);
  punn::EvalCounter counter;
  auto pop = punn::initialize_population(rng, params, data, counter);
  auto mstate = punn::MutationState::from(params);
  for (auto _ : state) punn::evolve_generation(pop, mstate, rng, params, data, counter);
}
BENCHMARK(BM_Generation)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
