#pragma once

#include <cstdint>
#include <random>

#include "souvlaki/numeric.hpp"

namespace souvlaki {

using Engine = std::mt19937_64;

/// Independent stream `index` of a master seed. Stream i is the same regardless of how many
/// other streams are drawn, so extending a horizon or a run count reuses earlier trajectories.
Engine substream(std::uint64_t master_seed, std::uint64_t index);

/// Uniform in [0, 1) with 53 random bits.
double uniform01(Engine& rng);

/// Uniform in [0, n); rejection sampling keeps it exact and library-independent.
std::uint64_t uniform_below(Engine& rng, std::uint64_t n);
BigInt uniform_below(Engine& rng, const BigInt& n);

}  // namespace souvlaki
