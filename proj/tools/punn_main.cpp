// punn: command-line front end for the product-unit network trainer.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "punn/errors.hpp"
#include "punn/experiment.hpp"
#include "punn/network.hpp"
#include "punn/pipeline.hpp"
#include "punn/two_stage.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kDatasetFile = "dataset.txt";

// A processed dataset may be given as a file or as a directory holding one.
std::string resolve_dataset(const std::string& path, const char* file = kDatasetFile) {
  if (fs::is_directory(path)) return (fs::path(path) / file).string();
  return path;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// File stem under the data directory for a preset.
std::string data_stem(const punn::DatasetPreset& preset) {
  std::string stem = lower(std::string(preset.name));
  if (stem == "ionos") stem = "ionosphere";
  return stem;
}

struct TrainTest {
  punn::Dataset train;
  punn::Dataset test;
};

TrainTest load_preset_split(const punn::DatasetPreset& preset, const std::string& data_dir,
                            std::uint64_t split_seed) {
  const fs::path base = fs::path(data_dir) / data_stem(preset);
  const auto csv = base.string() + ".csv";
  const auto schema = base.string() + ".schema";
  if (!fs::exists(csv) || !fs::exists(schema)) {
    throw punn::IoError(fmt::format("no data for preset {} (looked for {} and {})", preset.name,
                                    csv, schema));
  }
  auto processed = punn::preprocess(csv, punn::read_schema(schema));
  auto split = punn::stratified_holdout(processed.data, 0.75, split_seed);
  return {std::move(split.train), std::move(split.test)};
}

void check_preset_available(const punn::DatasetPreset& preset) {
  if (!preset.available) {
    throw punn::ArgumentError(
        fmt::format("preset {} is disabled: its data set has no public source", preset.name));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-unit neural network classifiers trained by evolutionary programming"};
  app.require_subcommand(1);

  // preprocess
  std::string pre_data, pre_schema, pre_out;
  auto* preprocess = app.add_subcommand("preprocess", "Impute, encode and normalize a CSV file");
  preprocess->add_option("--data", pre_data, "Input CSV with header")->required();
  preprocess->add_option("--schema", pre_schema, "Column schema file")->required();
  preprocess->add_option("--out", pre_out, "Output directory")->required();

  // split
  std::string split_data, split_out;
  double split_ratio = 0.75;
  std::uint64_t split_seed = 0;
  auto* split = app.add_subcommand("split", "Stratified holdout split of a processed dataset");
  split->add_option("--data", split_data, "Processed dataset (file or directory)")->required();
  split->add_option("--ratio", split_ratio, "Training fraction")->check(CLI::Range(0.0, 1.0));
  split->add_option("--seed", split_seed, "Shuffle seed");
  split->add_option("--out", split_out, "Output directory")->required();

  // train
  std::string tr_method, tr_config = "1", tr_preset, tr_train, tr_test, tr_model, tr_trace;
  std::size_t tr_neu = 0, tr_gen = 0, tr_pop = 1000;
  std::uint64_t tr_seed = 0;
  auto* train = app.add_subcommand("train", "Single training run");
  train->add_option("--method", tr_method, "edd or tsea")
      ->required()
      ->check(CLI::IsMember({"edd", "tsea"}));
  train->add_option("--config", tr_config, "Configuration 1|2|3|4|1star|2star");
  auto* tr_preset_opt = train->add_option("--preset", tr_preset, "Dataset preset for neu and gen");
  auto* tr_neu_opt = train->add_option("--neu", tr_neu, "Maximum hidden nodes")->excludes(tr_preset_opt);
  auto* tr_gen_opt = train->add_option("--gen", tr_gen, "Generations")->excludes(tr_preset_opt);
  tr_neu_opt->needs(tr_gen_opt);
  tr_gen_opt->needs(tr_neu_opt);
  train->add_option("--train", tr_train, "Processed training set")->required();
  train->add_option("--test", tr_test, "Processed test set");
  train->add_option("--seed", tr_seed, "Run seed");
  train->add_option("--pop", tr_pop, "Population size");
  train->add_option("--model-out", tr_model, "Where to write the best model")->required();
  train->add_option("--trace", tr_trace, "Per-generation trace (tab-separated)");

  // experiment
  std::string ex_preset, ex_config, ex_out, ex_data_dir = PUNN_DEFAULT_DATA_DIR, ex_train, ex_test;
  std::size_t ex_runs = 30, ex_workers = 1, ex_pop = 1000;
  std::uint64_t ex_seed = 0, ex_split_seed = 1;
  auto* experiment = app.add_subcommand("experiment", "Seeded repeated runs of one configuration");
  experiment->add_option("--preset", ex_preset, "Dataset preset")->required();
  experiment->add_option("--config", ex_config, "Configuration 1|2|3|4|1star|2star")->required();
  experiment->add_option("--runs", ex_runs, "Number of runs")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", ex_seed, "Master seed; run i uses seed + i");
  experiment->add_option("--out", ex_out, "Report CSV")->required();
  experiment->add_option("--workers", ex_workers, "Parallel runs (0 = hardware threads)");
  experiment->add_option("--pop", ex_pop, "Population size");
  experiment->add_option("--data-dir", ex_data_dir, "Directory with <preset>.csv and .schema");
  experiment->add_option("--split-seed", ex_split_seed, "Seed of the holdout split");
  auto* ex_train_opt = experiment->add_option("--train", ex_train, "Processed training set");
  auto* ex_test_opt = experiment->add_option("--test", ex_test, "Processed test set");
  ex_train_opt->needs(ex_test_opt);
  ex_test_opt->needs(ex_train_opt);

  // evals
  std::size_t ev_pop = 1000, ev_gen = 0;
  auto* evals = app.add_subcommand("evals", "Fitness evaluations per experiment");
  evals->add_option("--pop", ev_pop, "Population size")->check(CLI::PositiveNumber);
  evals->add_option("--gen", ev_gen, "Generations")->required()->check(CLI::PositiveNumber);

  // predict
  std::string pr_model, pr_data;
  auto* predict = app.add_subcommand("predict", "Classify the rows of a processed dataset");
  predict->add_option("--model", pr_model, "Model file")->required();
  predict->add_option("--data", pr_data, "Processed dataset")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*preprocess) {
      auto processed = punn::preprocess(pre_data, punn::read_schema(pre_schema));
      fs::create_directories(pre_out);
      const auto path = (fs::path(pre_out) / kDatasetFile).string();
      punn::write_processed(path, processed);
      fmt::print("{}: {} patterns, {} inputs, {} classes\n", path, processed.data.size(),
                 processed.data.inputs(), processed.data.classes());
    } else if (*split) {
      auto processed = punn::read_processed(resolve_dataset(split_data));
      auto parts = punn::stratified_holdout(processed.data, split_ratio, split_seed);
      fs::create_directories(split_out);
      const auto train_path = (fs::path(split_out) / "train.txt").string();
      const auto test_path = (fs::path(split_out) / "test.txt").string();
      punn::write_processed(train_path, {parts.train, processed.params});
      punn::write_processed(test_path, {parts.test, processed.params});
      fmt::print("train {} / test {}\n", parts.train.size(), parts.test.size());
    } else if (*train) {
      punn::ExperimentConfig config;
      config.configuration = punn::find_configuration(tr_config);
      const bool wants_tsea = tr_method == "tsea";
      if (wants_tsea != (config.configuration.method == punn::Method::tsea)) {
        throw punn::ArgumentError(
            fmt::format("configuration {} does not belong to method {}", tr_config, tr_method));
      }
      if (!tr_preset.empty()) {
        const auto& preset = punn::find_preset(tr_preset);
        config.dataset = std::string(preset.name);
        config.neu = preset.neu;
        config.generations = preset.generations;
      } else if (tr_neu > 0) {
        config.neu = tr_neu;
        config.generations = tr_gen;
      } else {
        throw punn::ArgumentError("train needs --preset or --neu with --gen");
      }
      config.base.pop_size = tr_pop;

      const auto train_set = punn::read_processed(resolve_dataset(tr_train, "train.txt")).data;
      std::ofstream trace;
      if (!tr_trace.empty()) {
        trace.open(tr_trace);
        if (!trace) throw punn::IoError(fmt::format("cannot open '{}'", tr_trace));
        trace << "generation\tbest_fitness\tmean_fitness\tbest_ccr_train\tevaluations\n";
      }
      punn::GenerationObserver observer;
      if (trace.is_open()) {
        observer = [&](const punn::GenerationStats& s) {
          fmt::print(trace, "{}\t{:.17g}\t{:.17g}\t{:.2f}\t{}\n", s.generation, s.best_fitness,
                     s.mean_fitness, punn::correct_classification_rate(s.best->net, train_set),
                     s.evaluations);
        };
      }
      auto outcome = punn::train_model(config, tr_seed, train_set, observer);
      const auto params = punn::ea_params(config);
      const std::size_t max_hidden =
          config.configuration.method == punn::Method::tsea ? params.max_hidden + 1 : params.max_hidden;
      punn::write_model(tr_model, {outcome.best.net, max_hidden});

      fmt::print("generations {}\nevaluations {}\nfitness {:.6f}\nconnections {}\n",
                 outcome.generations, outcome.evaluations, outcome.best.fitness,
                 outcome.best.connections);
      fmt::print("ccr_train {:.2f}\n", punn::correct_classification_rate(outcome.best.net, train_set));
      if (!tr_test.empty()) {
        const auto test_set = punn::read_processed(resolve_dataset(tr_test, "test.txt")).data;
        fmt::print("ccr_test {:.2f}\n", punn::correct_classification_rate(outcome.best.net, test_set));
      }
    } else if (*experiment) {
      const auto& preset = punn::find_preset(ex_preset);
      check_preset_available(preset);
      auto config = punn::make_experiment(preset, punn::find_configuration(ex_config), ex_runs, ex_seed);
      config.base.pop_size = ex_pop;
      config.workers = ex_workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : ex_workers;

      TrainTest sets = ex_train.empty()
                           ? load_preset_split(preset, ex_data_dir, ex_split_seed)
                           : TrainTest{punn::read_processed(ex_train).data,
                                       punn::read_processed(ex_test).data};
      auto records = punn::run_experiment(config, sets.train, sets.test);
      auto summary = punn::summarize(records);
      punn::write_report(ex_out, records, summary);
      fmt::print("{} config {}: {} runs, CCR_G {:.2f} +- {:.2f}, connections {:.2f} +- {:.2f}\n",
                 preset.name, config.configuration.id, summary.runs, summary.ccr_test.mean,
                 summary.ccr_test.sd, summary.connections.mean, summary.connections.sd);
    } else if (*evals) {
      const auto b = punn::expected_evaluations(ev_pop, ev_gen);
      fmt::print("edd_single\tedd_pair\ttsea\treduction%\n");
      fmt::print("{}\t{}\t{}\t{}\n", b.edd_single, b.edd_pair, b.tsea, b.reduction_percent);
    } else if (*predict) {
      const auto model = punn::read_model(pr_model);
      const auto data = punn::read_processed(resolve_dataset(pr_data)).data;
      if (data.inputs() != model.network.inputs() || data.classes() != model.network.classes()) {
        throw punn::DimensionError(fmt::format(
            "model is {}:{} but data has {} inputs and {} classes", model.network.inputs(),
            model.network.classes(), data.inputs(), data.classes()));
      }
      for (std::size_t i = 0; i < data.size(); ++i) {
        const auto cls = punn::predict_class(model.network, data.pattern(i));
        const auto& names = data.class_names();
        fmt::print("{}\n", cls < names.size() ? names[cls] : std::to_string(cls));
      }
      fmt::print(stderr, "ccr {:.2f}\n", punn::correct_classification_rate(model.network, data));
    }
  } catch (const punn::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
