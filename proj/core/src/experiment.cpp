#include "punn/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "punn/errors.hpp"
#include "punn/two_stage.hpp"

namespace punn {

namespace {

// Sizes are the standard benchmark ones; neu and gen are the per-dataset settings.
constexpr std::array<DatasetPreset, 14> kPresets{{
    {"Australian", 690, 517, 173, 14, 51, 2, 4, 100, true},
    {"Balance", 625, 469, 156, 4, 4, 3, 5, 150, true},
    {"Cancer", 699, 525, 174, 10, 9, 2, 2, 100, true},
    {"Heart", 303, 227, 76, 13, 26, 2, 3, 300, true},
    {"Hepatitis", 155, 117, 38, 19, 19, 2, 3, 100, true},
    {"Horse", 368, 276, 92, 27, 83, 2, 4, 300, true},
    {"Hypothyroid", 3772, 2829, 943, 29, 29, 4, 3, 500, true},
    {"Ionos", 351, 263, 88, 34, 34, 2, 4, 500, true},
    {"Liver", 345, 259, 86, 6, 6, 2, 4, 300, true},
    {"Newthyroid", 215, 161, 54, 5, 5, 3, 3, 300, true},
    {"Pima", 768, 576, 192, 8, 8, 2, 3, 120, true},
    {"Waveform", 5000, 3750, 1250, 40, 40, 3, 3, 500, true},
    {"BTX", 63, 42, 21, 3, 3, 7, 5, 500, false},
    {"Listeria", 539, 305, 234, 4, 4, 2, 4, 300, false},
}};

constexpr std::array<Configuration, 6> kConfigurations{{
    {"1", Method::edd, false, 1.0},
    {"2", Method::edd, true, 1.0},
    {"3", Method::edd, false, 1.5},
    {"4", Method::edd, true, 1.5},
    {"1star", Method::tsea, false, 1.0},
    {"2star", Method::tsea, false, 1.5},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::span<const DatasetPreset> dataset_presets() { return kPresets; }

const DatasetPreset& find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (iequals(p.name, name)) return p;
  }
  throw ArgumentError(fmt::format("unknown dataset preset '{}'", name));
}

std::span<const Configuration> configurations() { return kConfigurations; }

const Configuration& find_configuration(std::string_view id) {
  std::string key(id);
  if (key == "1*") key = "1star";
  if (key == "2*") key = "2star";
  for (const auto& c : kConfigurations) {
    if (c.id == key) return c;
  }
  throw ArgumentError(fmt::format("unknown configuration '{}'", id));
}

ExperimentConfig make_experiment(const DatasetPreset& preset, const Configuration& config,
                                 std::size_t runs, std::uint64_t seed) {
  ExperimentConfig exp;
  exp.dataset = std::string(preset.name);
  exp.configuration = config;
  exp.neu = preset.neu;
  exp.generations = preset.generations;
  exp.runs = runs;
  exp.seed = seed;
  return exp;
}

EaParams ea_params(const ExperimentConfig& config) {
  EaParams p = config.base;
  p.generations = config.generations;
  p.alpha2 = config.configuration.alpha2;
  p.max_hidden = config.neu + (config.configuration.extra_neuron ? 1 : 0);
  return p;
}

TrainOutcome train_model(const ExperimentConfig& config, std::uint64_t seed, const Dataset& train,
                         const GenerationObserver& observer) {
  const EaParams params = ea_params(config);
  TrainOutcome outcome;
  if (config.configuration.method == Method::tsea) {
    TseaObserver hooks;
    hooks.on_generation = observer;
    auto result = run_tsea(TseaParams{params}, seed, train, hooks);
    outcome.best = std::move(result.best);
    outcome.evaluations = result.counter.count;
    outcome.generations = result.history.stage1_generations + result.history.stage2_generations;
    return outcome;
  }
  Rng rng = make_rng(seed);
  EvalCounter counter;
  Population pop = initialize_population(rng, params, train, counter);
  MutationState state = MutationState::from(params);
  auto result = run_ea(pop, state, rng, params, train, counter, observer);
  outcome.best = std::move(result.best);
  outcome.evaluations = counter.count;
  outcome.generations = result.generations;
  return outcome;
}

double quantize_percent(double percent) { return std::round(percent * 100.0) / 100.0; }

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const Dataset& train,
                                      const Dataset& test) {
  if (config.runs == 0) throw ArgumentError("an experiment needs at least one run");
  if (train.empty() || test.empty()) throw ArgumentError("train and test sets must be nonempty");
  std::vector<RunRecord> records(config.runs);

  auto run_one = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.run = i;
    rec.seed = config.seed + i;
    auto outcome = train_model(config, rec.seed, train);
    rec.ccr_train = quantize_percent(correct_classification_rate(outcome.best.net, train));
    rec.ccr_test = quantize_percent(correct_classification_rate(outcome.best.net, test));
    rec.connections = count_connections(outcome.best.net);
    rec.evaluations = outcome.evaluations;
    rec.generations = outcome.generations;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records[i] = rec;
  };

  const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, config.runs);
  if (workers == 1) {
    for (std::size_t i = 0; i < config.runs; ++i) run_one(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < config.runs; i = next++) {
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

Stat mean_sd(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("cannot summarize an empty sample");
  Stat s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

Summary summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw ArgumentError("cannot summarize an empty record list");
  std::vector<double> train, test, conn, evals;
  for (const auto& r : records) {
    train.push_back(r.ccr_train);
    test.push_back(r.ccr_test);
    conn.push_back(static_cast<double>(r.connections));
    evals.push_back(static_cast<double>(r.evaluations));
  }
  return Summary{records.size(), mean_sd(train), mean_sd(test), mean_sd(conn), mean_sd(evals)};
}

}  // namespace punn
