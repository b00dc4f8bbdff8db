#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace uam {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Seed for a named substream, e.g. DeriveSeed(base, "demand", day_ordinal).
// Independent of call order, so any stage can be replayed in isolation.
std::uint64_t DeriveSeed(std::uint64_t base_seed, std::string_view stream, std::int64_t index = 0);

// Uniform draw on (0, 1].
double UniformOpenClosed(Rng& rng);

}  // namespace uam
