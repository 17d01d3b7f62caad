#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "punn/dataset.hpp"
#include "punn/evolution.hpp"

namespace punn {

/// Benchmark dataset: standard sizes and the per-dataset hidden-node count
/// (neu) and generation budget (gen).
struct DatasetPreset {
  std::string_view name;
  std::size_t total;
  std::size_t train;
  std::size_t test;
  std::size_t features;
  std::size_t inputs;
  std::size_t classes;
  std::size_t neu;
  std::size_t generations;
  /// False for datasets without a public source; such presets are listed
  /// but refused by the experiment runner.
  bool available;

  std::size_t stage1_generations() const { return generations / 10; }
};

std::span<const DatasetPreset> dataset_presets();
/// Case-insensitive lookup; throws ArgumentError for an unknown name.
const DatasetPreset& find_preset(std::string_view name);

enum class Method { edd, tsea };

/// Configurations 1-4 are single runs (2 and 4 with neu + 1 hidden nodes),
/// 1* and 2* are two-stage runs; 1, 2, 1* use alpha2 = 1 and 3, 4, 2* use 1.5.
struct Configuration {
  std::string_view id;  // "1".."4", "1star", "2star"
  Method method;
  bool extra_neuron;
  double alpha2;
};

std::span<const Configuration> configurations();
/// Accepts "1".."4", "1star"/"2star" and "1*"/"2*". Throws ArgumentError otherwise.
const Configuration& find_configuration(std::string_view id);

struct ExperimentConfig {
  std::string dataset;  // label only
  Configuration configuration = find_configuration("1");
  std::size_t neu = 3;
  std::size_t generations = 100;
  std::size_t runs = 30;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  /// Remaining EA knobs; max_hidden, generations and alpha2 are derived.
  EaParams base{};
};

ExperimentConfig make_experiment(const DatasetPreset& preset, const Configuration& config,
                                 std::size_t runs, std::uint64_t seed);

/// EA parameters of one run. For two-stage configurations max_hidden is neu
/// (the first stage-1 population).
EaParams ea_params(const ExperimentConfig& config);

struct TrainOutcome {
  Individual best;
  std::uint64_t evaluations = 0;
  std::size_t generations = 0;  // stage-1 length + stage-2 generations for two-stage runs
};

/// One training run from `seed`. The observer sees every main-loop
/// generation (stage 2 for two-stage runs).
TrainOutcome train_model(const ExperimentConfig& config, std::uint64_t seed, const Dataset& train,
                         const GenerationObserver& observer = {});

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double ccr_train = 0.0;  // percent, quantized to 0.01
  double ccr_test = 0.0;
  std::size_t connections = 0;
  std::uint64_t evaluations = 0;
  std::size_t generations = 0;
  double wall_seconds = 0.0;
};

/// Rounds a percentage to two decimals, the precision reports carry.
double quantize_percent(double percent);

/// Runs config.runs independent runs with seeds seed + i on up to
/// config.workers threads; records come back in run order.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const Dataset& train,
                                      const Dataset& test);

struct Stat {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

/// Throws ArgumentError on an empty span.
Stat mean_sd(std::span<const double> values);

struct Summary {
  std::size_t runs = 0;
  Stat ccr_train;
  Stat ccr_test;
  Stat connections;
  Stat evaluations;
};

/// Throws ArgumentError on an empty list.
Summary summarize(std::span<const RunRecord> records);

/// CSV: header, one row per record, then a "mean" and an "sd" row. CCR and
/// the summary columns carry two decimals.
void write_report(std::ostream& out, std::span<const RunRecord> records, const Summary& summary);
void write_report(const std::string& path, std::span<const RunRecord> records,
                  const Summary& summary);

struct Report {
  std::vector<RunRecord> records;
  std::vector<std::string> mean_row;  // raw fields of the summary rows
  std::vector<std::string> sd_row;
};

Report read_report(std::istream& in);
Report read_report(const std::string& path);

/// The summary rows exactly as write_report prints them (without newline).
std::string format_mean_row(const Summary& summary);
std::string format_sd_row(const Summary& summary);

}  // namespace punn
