#pragma once

#include <cstdint>
#include <random>

namespace zuklab {

/// The generator behind every sampler. Streams are seeded through
/// derive_stream_seed so trial i never depends on how many threads ran.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the independent stream for (master_seed, index).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index);

Rng make_rng(std::uint64_t seed);
Rng make_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace zuklab
