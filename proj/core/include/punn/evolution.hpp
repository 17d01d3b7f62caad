#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "punn/dataset.hpp"
#include "punn/network.hpp"
#include "punn/random.hpp"

namespace punn {

/// Knobs of the evolutionary programming loop. Defaults are the general
/// values used for every dataset; `generations` and `max_hidden` are set per
/// dataset and `alpha2` per configuration.
struct EaParams {
  std::size_t pop_size = 1000;
  std::size_t generations = 100;
  std::size_t max_hidden = 3;
  double alpha1 = 0.5;
  double alpha2 = 1.0;
  std::size_t gen_without_improving = 20;
  WeightInterval weights{};
  std::size_t node_op_min = 1;
  std::size_t node_op_max = 2;
  double link_density = 0.5;
  double improvement_epsilon = 1e-9;
  /// Stop after gen_without_improving stagnant generations.
  bool early_stopping = true;
  /// When false the structural group is passed through unmutated.
  bool structural_mutation = true;

  /// Throws ArgumentError on an unusable combination.
  void validate() const;
};

/// Which stage-1 population an individual descends from in a two-stage run.
enum class Origin : std::uint8_t { none, first, second };

struct Individual {
  Network net;
  double fitness = 0.0;
  std::size_t connections = 0;
  bool evaluated = false;
  Origin origin = Origin::none;
};

/// Evaluations of the fitness function performed by a run.
struct EvalCounter {
  std::uint64_t count = 0;
};

/// Computes and caches fitness and connection count; counts one evaluation.
void evaluate(Individual& ind, const Dataset& train, EvalCounter& counter);

/// Strict ordering used to sort populations: higher fitness first, then
/// fewer connections. Equal keys keep their relative order (stable sort).
bool fitter(const Individual& a, const Individual& b);

struct Population {
  std::vector<Individual> members;

  std::size_t size() const { return members.size(); }
  void sort();
  const Individual& best() const { return members.front(); }
  double mean_fitness() const;
};

/// Step sizes of parametric mutation plus the success statistics of the
/// generation in progress.
struct MutationState {
  static constexpr double kMinAlpha = 1e-4;
  static constexpr double kMaxAlpha = 5.0;
  static constexpr double kShrink = 0.9;

  double alpha1 = 0.5;
  double alpha2 = 1.0;
  std::size_t successes = 0;
  std::size_t attempts = 0;

  static MutationState from(const EaParams& params) { return {params.alpha1, params.alpha2, 0, 0}; }
};

/// Generates 10 * pop_size random networks, evaluates them all and keeps the
/// pop_size fittest, sorted.
Population initialize_population(Rng& rng, const EaParams& params, const Dataset& train,
                                 EvalCounter& counter);

/// T = 1 - A, in [0, 1).
double temperature(const Individual& ind);

/// Adds N(0, alpha1 * T) noise to every present exponent and N(0, alpha2 * T)
/// to every present coefficient and bias, clamps to the weight interval and
/// re-evaluates (one evaluation). A fitter-or-equal candidate is accepted and
/// recorded as a success; a worse one is accepted with probability
/// exp(dA / T), otherwise the original is returned. Zero temperature or zero
/// step sizes return the input unchanged and still count an attempt.
Individual parametric_mutation(const Individual& ind, MutationState& state, Rng& rng,
                               const EaParams& params, const Dataset& train, EvalCounter& counter);

/// One-fifth success rule over the closing generation: scale both step sizes
/// by 1/0.9 when more than a fifth of the attempts succeeded, by 0.9 when
/// fewer did, clamp nonzero step sizes to [1e-4, 5] and reset the counters.
/// A step size of exactly zero stays zero. No-op without attempts.
MutationState adapt_variances(const MutationState& state);

// Structural operators. Each returns true when the network changed.

/// Adds U{node_op_min..node_op_max} fresh nodes, never exceeding max_hidden.
bool add_nodes(Network& net, Rng& rng, const EaParams& params);
/// Deletes U{node_op_min..node_op_max} random nodes, never going below one.
bool delete_nodes(Network& net, Rng& rng, const EaParams& params);
/// Activates 1 or 2 random absent links (either layer) with uniform weights.
bool add_connections(Network& net, Rng& rng, const EaParams& params);
/// Removes 1 or 2 random present links (biases are not links).
bool delete_connections(Network& net, Rng& rng, const EaParams& params);
/// Replaces two random nodes by one: output coefficients summed, shared
/// input exponents averaged, unshared links kept with probability 1/2.
bool fuse_nodes(Network& net, Rng& rng, const EaParams& params);
/// Deterministic core of fuse_nodes for nodes a != b.
void fuse_node_pair(Network& net, std::size_t a, std::size_t b, Rng& rng, const WeightInterval& weights);

/// The five operators in order, each fired with probability T; if none
/// fires one is picked uniformly. The result is unevaluated.
Individual structural_mutation(const Individual& ind, Rng& rng, const EaParams& params);

/// Partition of a population of size N for one generation.
struct GenerationSizes {
  std::size_t elite = 0;       // copies of the best that bypass mutation
  std::size_t parametric = 0;  // best of the working set
  std::size_t structural = 0;  // rest of the working set

  std::size_t working() const { return parametric + structural; }
};

/// elite = ceil(N / 10), parametric = ceil((N - elite) / 10), so the working
/// set (and the evaluations per generation) is exactly floor(0.9 N).
GenerationSizes generation_sizes(std::size_t pop_size);

/// One generation: elite copies of the best replace the worst, the best of
/// the working set get parametric mutation and the rest structural mutation,
/// the working set is re-evaluated and the union is sorted.
void evolve_generation(Population& pop, MutationState& state, Rng& rng, const EaParams& params,
                       const Dataset& train, EvalCounter& counter);

struct GenerationStats {
  std::size_t generation = 0;  // 1-based
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::uint64_t evaluations = 0;
  const Individual* best = nullptr;
};

using GenerationObserver = std::function<void(const GenerationStats&)>;

struct EaResult {
  Individual best;
  std::size_t generations = 0;
};

/// Runs generations until params.generations is reached or, with early
/// stopping, until neither the best nor the mean fitness has improved on its
/// running maximum by more than improvement_epsilon for
/// gen_without_improving consecutive generations.
EaResult run_ea(Population& pop, MutationState& state, Rng& rng, const EaParams& params,
                const Dataset& train, EvalCounter& counter, const GenerationObserver& observer = {});

}  // namespace punn
