#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "punn/evolution.hpp"

namespace punn {

/// Two-stage run: two populations with max_hidden = neu and neu + 1 are each
/// evolved for a tenth of the generation budget, their best halves are
/// merged, and the merged population is evolved by the standard loop with
/// max_hidden = neu + 1.
struct TseaParams {
  /// base.max_hidden is neu; base.generations is the stage-2 budget.
  EaParams base;

  std::size_t neu() const { return base.max_hidden; }
  std::size_t stage1_generations() const { return base.generations / 10; }
};

/// Best pop_size / 2 of each (sorted) population, concatenated and sorted.
/// Throws ArgumentError when pop_size is odd or a source is too small.
Population merge_populations(const Population& first, const Population& second,
                             std::size_t pop_size);

struct TseaHistory {
  std::size_t stage1_generations = 0;
  std::size_t stage2_generations = 0;
  double first_best_fitness = 0.0;   // after stage 1
  double second_best_fitness = 0.0;  // after stage 1
};

struct TseaResult {
  Individual best;
  EvalCounter counter;
  TseaHistory history;
};

/// Hooks for inspecting a run; both are optional.
struct TseaObserver {
  std::function<void(const Population&)> on_merge;
  GenerationObserver on_generation;  // stage 2 only
};

/// Substream labels derived from the run seed.
enum class TseaStream : std::uint64_t { first = 1, second = 2, stage2 = 3 };

/// Stage 1 runs a fixed number of generations without early stopping;
/// stage 2 uses base.early_stopping. Throws ArgumentError on odd pop_size.
TseaResult run_tsea(const TseaParams& params, std::uint64_t seed, const Dataset& train,
                    const TseaObserver& observer = {});

/// Fitness evaluations per experiment, as counted by the implementation when
/// no run stops early: a single run performs 10 N + floor(0.9 N) gen, a
/// two-stage run 2 (10 N + floor(0.9 N) floor(gen / 10)) + floor(0.9 N) gen.
struct EvaluationBudget {
  std::uint64_t edd_single = 0;
  std::uint64_t edd_pair = 0;  // the two single runs a two-stage run replaces
  std::uint64_t tsea = 0;
  int reduction_percent = 0;   // round(100 (1 - tsea / edd_pair))
};

EvaluationBudget expected_evaluations(std::size_t pop_size, std::size_t generations);

}  // namespace punn
