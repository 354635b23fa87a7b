#pragma once

// Seeded instance generators. Every RNG stream in the library is an
// mt19937_64 whose seed is derived from a master seed with SplitMix64, so
// reruns with the same seed are bit-identical.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cutting_forge/families.hpp"

namespace cutting_forge {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sub-stream `stream` of master seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Integer in [lo, hi].
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// Lines with pairwise distinct integer slopes and random intercepts; three
/// concurrent lines are rare but not excluded.
std::vector<CurveParam> random_lines(std::size_t n, std::mt19937_64& rng);

/// Parabolas with pairwise distinct nonzero leading coefficients.
std::vector<CurveParam> random_parabolas(std::size_t n, std::mt19937_64& rng);

std::vector<CurveParam> random_curves(const CurveFamily& family, std::size_t n, std::mt19937_64& rng);

}  // namespace cutting_forge
