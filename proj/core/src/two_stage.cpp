#include "punn/two_stage.hpp"

#include <cmath>

#include <fmt/format.h>

#include "punn/errors.hpp"

namespace punn {

Population merge_populations(const Population& first, const Population& second,
                             std::size_t pop_size) {
  if (pop_size % 2 != 0) throw ArgumentError("two-stage merge needs an even population size");
  const std::size_t half = pop_size / 2;
  if (first.size() < half || second.size() < half) {
    throw ArgumentError("stage-1 population smaller than half the merged size");
  }
  Population merged;
  merged.members.reserve(pop_size);
  merged.members.insert(merged.members.end(), first.members.begin(),
                        first.members.begin() + static_cast<std::ptrdiff_t>(half));
  merged.members.insert(merged.members.end(), second.members.begin(),
                        second.members.begin() + static_cast<std::ptrdiff_t>(half));
  merged.sort();
  return merged;
}

namespace {

Population run_stage1(const EaParams& params, std::size_t generations, Rng& rng,
                      const Dataset& train, EvalCounter& counter, Origin origin) {
  Population pop = initialize_population(rng, params, train, counter);
  for (auto& m : pop.members) m.origin = origin;
  MutationState state = MutationState::from(params);
  for (std::size_t g = 0; g < generations; ++g) {
    evolve_generation(pop, state, rng, params, train, counter);
  }
  return pop;
}

}  // namespace

TseaResult run_tsea(const TseaParams& params, std::uint64_t seed, const Dataset& train,
                    const TseaObserver& observer) {
  params.base.validate();
  if (params.base.pop_size % 2 != 0) {
    throw ArgumentError("two-stage run needs an even population size");
  }
  TseaResult result;
  result.history.stage1_generations = params.stage1_generations();

  EaParams first = params.base;
  EaParams wide = params.base;
  wide.max_hidden = params.neu() + 1;

  Rng rng_first = substream(seed, static_cast<std::uint64_t>(TseaStream::first));
  Rng rng_second = substream(seed, static_cast<std::uint64_t>(TseaStream::second));
  Rng rng_stage2 = substream(seed, static_cast<std::uint64_t>(TseaStream::stage2));

  const Population p1 = run_stage1(first, result.history.stage1_generations, rng_first, train,
                                   result.counter, Origin::first);
  const Population p2 = run_stage1(wide, result.history.stage1_generations, rng_second, train,
                                   result.counter, Origin::second);
  result.history.first_best_fitness = p1.best().fitness;
  result.history.second_best_fitness = p2.best().fitness;

  Population merged = merge_populations(p1, p2, params.base.pop_size);
  if (observer.on_merge) observer.on_merge(merged);

  MutationState state = MutationState::from(wide);
  EaResult stage2 = run_ea(merged, state, rng_stage2, wide, train, result.counter,
                           observer.on_generation);
  result.best = std::move(stage2.best);
  result.history.stage2_generations = stage2.generations;
  return result;
}

EvaluationBudget expected_evaluations(std::size_t pop_size, std::size_t generations) {
  if (pop_size == 0 || generations == 0) {
    throw ArgumentError("population size and generations must be positive");
  }
  const std::uint64_t n = pop_size;
  const std::uint64_t per_generation = n - generation_sizes(pop_size).elite;  // floor(0.9 N)
  const std::uint64_t init = 10 * n;
  const std::uint64_t stage1 = generations / 10;

  EvaluationBudget b;
  b.edd_single = init + per_generation * generations;
  b.edd_pair = 2 * b.edd_single;
  b.tsea = 2 * (init + per_generation * stage1) + per_generation * generations;
  const double ratio = static_cast<double>(b.tsea) / static_cast<double>(b.edd_pair);
  b.reduction_percent = static_cast<int>(std::lround(100.0 * (1.0 - ratio)));
  return b;
}

}  // namespace punn
