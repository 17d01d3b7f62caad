#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace punn {

/// Generator used throughout the library. Every stochastic operation takes
/// one by reference so runs are reproducible from a single seed.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);

/// Independent generator for a labelled sub-task of a seeded run. Equal
/// (seed, label) pairs give identical streams; distinct labels give
/// unrelated ones.
Rng substream(std::uint64_t seed, std::uint64_t label);

double uniform_real(Rng& rng, double lo, double hi);

/// Uniform integer in [0, n). Requires n > 0.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Uniform integer in [lo, hi].
std::size_t uniform_count(Rng& rng, std::size_t lo, std::size_t hi);

bool bernoulli(Rng& rng, double p);

/// Zero-mean normal draw with the given standard deviation.
double gaussian(Rng& rng, double stddev);

}  // namespace punn
