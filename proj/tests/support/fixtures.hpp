#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "punn/dataset.hpp"
#include "punn/evolution.hpp"
#include "punn/network.hpp"
#include "punn/random.hpp"

namespace punn::testing {

/// Random dataset with entries in [1, 2]; every class gets at least one row
/// when rows >= classes.
Dataset random_dataset(Rng& rng, std::size_t rows, std::size_t inputs, std::size_t classes);

/// Two Gaussian blobs mapped into [1, 2]^2; easy enough that a small
/// population makes progress within a few generations.
Dataset toy_problem(std::uint64_t seed, std::size_t rows = 40);

/// Network with arbitrary link masks (empty nodes and unlinked outputs
/// included), up to max_hidden nodes.
Network random_sparse_network(Rng& rng, std::size_t inputs, std::size_t classes,
                              std::size_t max_hidden, const WeightInterval& weights = {});

/// Small, fast parameters for engine tests.
EaParams small_params(std::size_t pop_size = 20, std::size_t generations = 10,
                      std::size_t max_hidden = 3);

}  // namespace punn::testing
