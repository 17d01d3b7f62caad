#include "punn/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "punn/errors.hpp"

namespace punn {

void EaParams::validate() const {
  if (pop_size < 2) throw ArgumentError("population size must be at least 2");
  if (max_hidden == 0) throw ArgumentError("max_hidden must be at least 1");
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0)) throw ArgumentError("step sizes must be nonnegative");
  if (!(weights.lo < weights.hi)) throw ArgumentError("empty weight interval");
  if (node_op_min == 0 || node_op_min > node_op_max) throw ArgumentError("bad node operator range");
  if (!(link_density > 0.0 && link_density <= 1.0)) throw ArgumentError("link density must lie in (0, 1]");
  if (!(improvement_epsilon >= 0.0)) throw ArgumentError("improvement epsilon must be nonnegative");
}

void evaluate(Individual& ind, const Dataset& train, EvalCounter& counter) {
  ind.fitness = fitness(ind.net, train);
  ind.connections = count_connections(ind.net);
  ind.evaluated = true;
  ++counter.count;
}

bool fitter(const Individual& a, const Individual& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.connections < b.connections;
}

void Population::sort() { std::stable_sort(members.begin(), members.end(), fitter); }

double Population::mean_fitness() const {
  if (members.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& m : members) sum += m.fitness;
  return sum / static_cast<double>(members.size());
}

Population initialize_population(Rng& rng, const EaParams& params, const Dataset& train,
                                 EvalCounter& counter) {
  params.validate();
  if (train.empty()) throw ArgumentError("training set is empty");
  Population pop;
  const std::size_t candidates = 10 * params.pop_size;
  pop.members.reserve(candidates);
  for (std::size_t n = 0; n < candidates; ++n) {
    Individual ind;
    ind.net = random_network(rng, train.inputs(), params.max_hidden, train.classes(), params.weights,
                             params.link_density);
    evaluate(ind, train, counter);
    pop.members.push_back(std::move(ind));
  }
  pop.sort();
  pop.members.resize(params.pop_size);
  return pop;
}

double temperature(const Individual& ind) { return 1.0 - ind.fitness; }

Individual parametric_mutation(const Individual& ind, MutationState& state, Rng& rng,
                               const EaParams& params, const Dataset& train, EvalCounter& counter) {
  const double t = std::max(0.0, temperature(ind));
  const double sd_exponent = std::sqrt(state.alpha1 * t);
  const double sd_coefficient = std::sqrt(state.alpha2 * t);
  const auto& bounds = params.weights;

  Individual candidate = ind;
  Network& net = candidate.net;
  for (std::size_t j = 0; j < net.hidden_count(); ++j) {
    auto& node = net.node(j);
    for (std::size_t i = 0; i < net.inputs(); ++i) {
      if (node.has_input(i)) {
        node.exponents[i] = bounds.clamp(node.exponents[i] + gaussian(rng, sd_exponent));
      }
    }
    for (std::size_t l = 0; l < net.outputs(); ++l) {
      if (node.has_output(l)) {
        node.coefficients[l] = bounds.clamp(node.coefficients[l] + gaussian(rng, sd_coefficient));
      }
    }
  }
  for (std::size_t l = 0; l < net.outputs(); ++l) {
    net.set_bias(l, bounds.clamp(net.bias(l) + gaussian(rng, sd_coefficient)));
  }
  evaluate(candidate, train, counter);
  ++state.attempts;

  if (candidate.fitness >= ind.fitness) {
    ++state.successes;
    return candidate;
  }
  if (t > 0.0 && bernoulli(rng, std::exp((candidate.fitness - ind.fitness) / t))) return candidate;
  return ind;
}

MutationState adapt_variances(const MutationState& state) {
  if (state.attempts == 0) return state;
  MutationState next = state;
  // successes / attempts compared with 1/5 without rounding.
  const std::size_t scaled = 5 * state.successes;
  double factor = 1.0;
  if (scaled > state.attempts) {
    factor = 1.0 / MutationState::kShrink;
  } else if (scaled < state.attempts) {
    factor = MutationState::kShrink;
  }
  auto scale = [&](double alpha) {
    if (alpha == 0.0) return 0.0;
    return std::clamp(alpha * factor, MutationState::kMinAlpha, MutationState::kMaxAlpha);
  };
  next.alpha1 = scale(state.alpha1);
  next.alpha2 = scale(state.alpha2);
  next.successes = 0;
  next.attempts = 0;
  return next;
}

GenerationSizes generation_sizes(std::size_t pop_size) {
  GenerationSizes sizes;
  sizes.elite = (pop_size + 9) / 10;
  const std::size_t working = pop_size - sizes.elite;
  sizes.parametric = (working + 9) / 10;
  sizes.structural = working - sizes.parametric;
  return sizes;
}

void evolve_generation(Population& pop, MutationState& state, Rng& rng, const EaParams& params,
                       const Dataset& train, EvalCounter& counter) {
  if (pop.size() != params.pop_size) {
    throw ArgumentError(
        fmt::format("population has {} members, expected {}", pop.size(), params.pop_size));
  }
  const auto sizes = generation_sizes(params.pop_size);

  std::vector<Individual> elite(pop.members.begin(),
                                pop.members.begin() + static_cast<std::ptrdiff_t>(sizes.elite));
  pop.members.resize(sizes.working());

  for (std::size_t i = 0; i < sizes.parametric; ++i) {
    pop.members[i] = parametric_mutation(pop.members[i], state, rng, params, train, counter);
  }
  for (std::size_t i = sizes.parametric; i < sizes.working(); ++i) {
    if (params.structural_mutation) pop.members[i] = structural_mutation(pop.members[i], rng, params);
    evaluate(pop.members[i], train, counter);
  }

  for (auto& e : elite) pop.members.push_back(std::move(e));
  pop.sort();
  state = adapt_variances(state);
}

EaResult run_ea(Population& pop, MutationState& state, Rng& rng, const EaParams& params,
                const Dataset& train, EvalCounter& counter, const GenerationObserver& observer) {
  params.validate();
  if (pop.members.empty()) throw ArgumentError("population is empty");
  double best_max = pop.best().fitness;
  double mean_max = pop.mean_fitness();
  std::size_t stagnant = 0;
  std::size_t generation = 0;

  while (generation < params.generations) {
    evolve_generation(pop, state, rng, params, train, counter);
    ++generation;

    const double best = pop.best().fitness;
    const double mean = pop.mean_fitness();
    if (observer) observer(GenerationStats{generation, best, mean, counter.count, &pop.best()});

    bool improved = false;
    if (best > best_max + params.improvement_epsilon) improved = true;
    if (mean > mean_max + params.improvement_epsilon) improved = true;
    best_max = std::max(best_max, best);
    mean_max = std::max(mean_max, mean);
    stagnant = improved ? 0 : stagnant + 1;
    if (params.early_stopping && stagnant >= params.gen_without_improving) break;
  }
  return {pop.best(), generation};
}

}  // namespace punn
