#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "punn/errors.hpp"
#include "punn/experiment.hpp"
#include "punn/two_stage.hpp"

namespace punn {
namespace {

using testing::small_params;
using testing::toy_problem;

Population with_fitness(std::initializer_list<double> values, Origin origin) {
  Population p;
  for (double f : values) {
    Individual ind;
    ind.net = Network(1, 2);
    ind.fitness = f;
    ind.connections = 1;
    ind.origin = origin;
    p.members.push_back(ind);
  }
  return p;
}

TEST(Merge, ToyExample) {
  const auto p1 = with_fitness({.9, .8, .7, .6}, Origin::first);
  const auto p2 = with_fitness({.85, .75, .65, .55}, Origin::second);
  const auto merged = merge_populations(p1, p2, 4);
  ASSERT_EQ(merged.size(), 4u);
  const std::vector<double> want{.9, .85, .8, .75};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(merged.members[i].fitness, want[i]);
  EXPECT_EQ(merged.members[0].origin, Origin::first);
  EXPECT_EQ(merged.members[1].origin, Origin::second);
}

TEST(Merge, Errors) {
  const auto p = with_fitness({.9, .8, .7, .6}, Origin::first);
  EXPECT_THROW(merge_populations(p, p, 3), ArgumentError);
  EXPECT_THROW(merge_populations(p, p, 10), ArgumentError);
}

TEST(Tsea, OddPopulationThrows) {
  EXPECT_THROW(run_tsea(TseaParams{small_params(11)}, 1, toy_problem(1)), ArgumentError);
}

TEST(Tsea, StageOneLength) {
  EXPECT_EQ(TseaParams{small_params(10, 150)}.stage1_generations(), 15u);
  EXPECT_EQ(find_preset("Balance").stage1_generations(), 15u);
}

TEST(Tsea, MergeStructure) {
  const Dataset train = toy_problem(5);
  auto params = small_params(40, 20, 2);
  bool called = false;
  TseaObserver obs;
  obs.on_merge = [&](const Population& merged) {
    called = true;
    ASSERT_EQ(merged.size(), 40u);
    std::size_t first = 0, second = 0;
    for (const auto& m : merged.members) {
      first += m.origin == Origin::first;
      second += m.origin == Origin::second;
      EXPECT_LE(m.net.hidden_count(), 3u);
      if (m.origin == Origin::first) EXPECT_LE(m.net.hidden_count(), 2u);
    }
    EXPECT_EQ(first, 20u);
    EXPECT_EQ(second, 20u);
    for (std::size_t i = 1; i < merged.size(); ++i) {
      EXPECT_GE(merged.members[i - 1].fitness, merged.members[i].fitness);
    }
  };
  const auto r = run_tsea(TseaParams{params}, 9, train, obs);
  EXPECT_TRUE(called);
  EXPECT_EQ(r.history.stage1_generations, 2u);
  EXPECT_LE(r.best.net.hidden_count(), 3u);
}

TEST(Tsea, CounterMatchesClosedForm) {
  const Dataset train = toy_problem(5, 6);
  for (std::size_t gen : {10u, 25u, 40u}) {
    auto params = small_params(50, gen, 2);
    params.early_stopping = false;
    const auto r = run_tsea(TseaParams{params}, gen, train);
    // Small-N counterpart of the closed form with floor(0.9 N) per generation.
    const std::uint64_t per = 45, init = 500, s1 = gen / 10;
    EXPECT_EQ(r.counter.count, 2 * (init + per * s1) + per * gen);
    EXPECT_EQ(r.history.stage2_generations, gen);
  }
}

TEST(Tsea, ClosedFormAtFullSize) {
  const Dataset train = toy_problem(5, 4);
  auto params = small_params(1000, 100, 2);
  params.early_stopping = false;
  const auto r = run_tsea(TseaParams{params}, 1, train);
  EXPECT_EQ(r.counter.count, expected_evaluations(1000, 100).tsea);
}

TEST(ExpectedEvaluations, TableRows) {
  struct Row {
    std::size_t gen;
    std::uint64_t tsea, edd_pair;
    int reduction;
  };
  for (const Row& row : {Row{100, 128000, 200000, 36}, Row{120, 149600, 236000, 37},
                         Row{150, 182000, 290000, 37}, Row{300, 344000, 560000, 39},
                         Row{500, 560000, 920000, 39}}) {
    const auto b = expected_evaluations(1000, row.gen);
    EXPECT_EQ(b.tsea, row.tsea) << row.gen;
    EXPECT_EQ(b.edd_pair, row.edd_pair) << row.gen;
    EXPECT_EQ(b.edd_single * 2, b.edd_pair);
    EXPECT_EQ(b.reduction_percent, row.reduction) << row.gen;
  }
  EXPECT_EQ(expected_evaluations(1000, 150).edd_single, 145000u);
  EXPECT_THROW(expected_evaluations(0, 100), ArgumentError);
}

}  // namespace
}  // namespace punn
