#pragma once

#include <cstdint>
#include <random>

namespace hsp {

/// SplitMix64 step. Advances the state and returns the next output word.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives the seed of an independent stream from a master seed and a stream
/// index. Every randomized component draws from an engine obtained this way,
/// so a single master seed reproduces an entire run bit for bit while rounds
/// and trials remain order-independent.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// mt19937_64 seeded for stream `stream` of `master`.
std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream);

/// Uniform double in [0, 1) with 53 random bits. Implemented directly on the
/// engine output so results do not depend on library distribution internals.
double canonical_unit(std::mt19937_64& rng);

/// Unbiased uniform integer in [0, bound). Requires bound >= 1.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace hsp
